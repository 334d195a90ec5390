//! The `omegatt` command-line driver.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use omegatt::computads::{free_computad, BipointedComputad};
use omegatt::dimset::DimSet;
use omegatt::homcat::hom_factor;
use omegatt::laws::{run_all, LawConfig};
use omegatt::surface::{self, Context, Program, SurfaceError, Transform, Value};
use omegatt::{dot, json, Tree};

#[derive(Parser, Debug)]
#[command(name = "omegatt", version, about = "Finite computads of weak omega-categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Ctt,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Elaborate and typecheck a file, then print it in canonical form.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ctt")]
        format: Format,
    },
    /// Suspend every computad and cell of a file.
    Susp {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ctt")]
        format: Format,
    },
    /// Take the opposite in the listed dimensions.
    Op {
        /// Comma-separated dimensions, e.g. `1,3`.
        #[arg(long, value_parser = parse_dims)]
        dims: DimSet,
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ctt")]
        format: Format,
    },
    /// Desuspend every computad and cell of a file.
    Desusp {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ctt")]
        format: Format,
    },
    /// The composition template for an n-cell and an m-cell along a k-cell.
    Comp {
        n: usize,
        k: usize,
        m: usize,
        #[arg(long, value_enum, default_value = "ctt")]
        format: Format,
    },
    /// The identity on a cell expression.
    Id {
        expr: String,
        /// File whose declarations are in scope.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "ctt")]
        format: Format,
    },
    /// The Eckmann-Hilton computad with its composites and their opposites.
    Eh {
        /// File declaring two terms to compare as `op{1}(LHS) = op{2}(RHS)`.
        #[arg(long = "in", requires_all = ["lhs", "rhs"])]
        input: Option<PathBuf>,
        #[arg(long)]
        lhs: Option<String>,
        #[arg(long)]
        rhs: Option<String>,
    },
    /// Hom factorization of a loop cell between two 0-cells.
    Hom {
        #[arg(long)]
        src: String,
        #[arg(long)]
        tgt: String,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "ctt")]
        format: Format,
        #[command(subcommand)]
        action: HomAction,
    },
    /// Export a file or the pasting scheme of a tree.
    Export {
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(required_unless_present = "tree", conflicts_with = "tree")]
        file: Option<PathBuf>,
        /// A tree literal such as `[[],[]]`.
        #[arg(long)]
        tree: Option<String>,
    },
    /// Run the law harness.
    Laws {
        #[arg(long, default_value_t = 5)]
        max_nodes: usize,
        #[arg(long, default_value_t = 3)]
        dims_upto: usize,
        #[arg(long, default_value_t = 3)]
        loop_depth: usize,
    },
}

#[derive(Subcommand, Debug)]
enum HomAction {
    /// Factor a loop cell into the hom computad.
    Factor { expr: String },
}

fn parse_dims(s: &str) -> Result<DimSet, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Outcome of a verb: text for stdout, or an exit code with a message.
enum Failure {
    Check(String),
    Usage(String),
}

type Outcome = Result<String, Failure>;

fn located(file: &str, e: &SurfaceError) -> Failure {
    Failure::Check(format!("{file}:{e}"))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Program, Failure> {
    let text = read(path)?;
    let shown = path.display().to_string();
    if path.extension().is_some_and(|x| x == "json") {
        let v: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Failure::Check(format!("{shown}: error[JsonError]: {e}")))?;
        json::program_from_json(&v).map_err(|e| Failure::Check(format!("{shown}: error[JsonError]: {e}")))
    } else {
        surface::load(&text).map_err(|e| located(&shown, &e))
    }
}

fn context(input: Option<&Path>) -> Result<(Context, String), Failure> {
    let mut cx = Context::new();
    let Some(path) = input else { return Ok((cx, "<expr>".into())) };
    let text = read(path)?;
    let shown = path.display().to_string();
    let decls = surface::parse(&text).map_err(|e| located(&shown, &e))?;
    surface::elaborate(&mut cx, &decls).map_err(|e| located(&shown, &e))?;
    Ok((cx, shown))
}

fn eval(cx: &Context, src: &str) -> Result<Value, Failure> {
    let e = surface::parse_expr(src).map_err(|e| located("<expr>", &e))?;
    cx.eval(&e).map_err(|e| located("<expr>", &e))
}

fn emit(p: &Program, format: Format) -> String {
    match format {
        Format::Ctt => p.to_string(),
        Format::Json => json::to_string(&json::program_to_json(p)),
    }
}

fn emit_value(v: &Value, format: Format) -> String {
    match (format, v) {
        (Format::Ctt, v) => format!("{v}\n"),
        (Format::Json, Value::Cell { cell, .. }) => json::to_string(&json::cell_to_json(cell)),
        (Format::Json, Value::Hom { cell, .. }) => json::to_string(&json::hom_cell_to_json(cell)),
    }
}

fn transform(t: Transform, file: &Path, format: Format) -> Outcome {
    let p = load(file)?;
    let q = t.apply(&p).map_err(|e| Failure::Check(format!("{}: {e}", file.display())))?;
    Ok(emit(&q, format))
}

const EH_SOURCE: &str = "computad Ceh { x : * ; a : id(x) -> id(x) ; b : id(x) -> id(x) }
let ab0 = comp(2,0,2)[a, b]
let ba0 = comp(2,0,2)[b, a]
let ab1 = comp(2,1,2)[a, b]
let ba1 = comp(2,1,2)[b, a]
";

fn eh(input: Option<&Path>, lhs: Option<&str>, rhs: Option<&str>) -> Outcome {
    let p = surface::load(EH_SOURCE).expect("built-in source elaborates");
    let mut out = p.to_string();
    let cell = |n: &str| p.get(n).and_then(Value::as_cell).expect("bound").1.clone();
    let ceh = p.computads().next().expect("declared").1.clone();
    let mut ok = true;
    let mut verdict = |label: String, holds: bool| {
        ok &= holds;
        out.push_str(&format!("# {label}: {}\n", if holds { "holds" } else { "FAILS" }));
    };
    for w in [DimSet::of(&[1]), DimSet::of(&[2]), DimSet::of(&[1, 2])] {
        verdict(format!("op{w}(Ceh) = Ceh"), omegatt::metaops::op_computad(&w, &ceh) == *ceh);
    }
    let op = |w: &[usize], n: &str| omegatt::metaops::op_cell(&DimSet::of(w), &cell(n));
    verdict("op{1}(ab0) = ba0".into(), op(&[1], "ab0") == cell("ba0"));
    verdict("op{2}(ab1) = ba1".into(), op(&[2], "ab1") == cell("ba1"));
    if let (Some(path), Some(l), Some(r)) = (input, lhs, rhs) {
        let (cx, _) = context(Some(path))?;
        let (hl, cl) = match eval(&cx, l)? {
            Value::Cell { home, cell } => (home, cell),
            Value::Hom { .. } => return Err(Failure::Check(format!("<expr>: `{l}` is a hom cell"))),
        };
        let (hr, cr) = match eval(&cx, r)? {
            Value::Cell { home, cell } => (home, cell),
            Value::Hom { .. } => return Err(Failure::Check(format!("<expr>: `{r}` is a hom cell"))),
        };
        let (w1, w2) = (DimSet::of(&[1]), DimSet::of(&[2]));
        let same_home = omegatt::metaops::op_computad(&w1, &hl) == omegatt::metaops::op_computad(&w2, &hr);
        let same_cell = omegatt::metaops::op_cell(&w1, &cl) == omegatt::metaops::op_cell(&w2, &cr);
        verdict(format!("op{{1}}({l}) = op{{2}}({r})"), same_home && same_cell);
    }
    if ok {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

fn hom(src: &str, tgt: &str, input: Option<&Path>, format: Format, action: &HomAction) -> Outcome {
    let (cx, _) = context(input)?;
    let HomAction::Factor { expr } = action;
    let base = |s: &str| -> Result<_, Failure> {
        match eval(&cx, s)? {
            Value::Cell { home, cell } => match cell.as_var() {
                Some(n) if cell.dim() == 0 => Ok((home, n.clone())),
                _ => Err(Failure::Check(format!("<expr>: error[NotAGenerator]: `{s}` is not a 0-dimensional generator"))),
            },
            Value::Hom { .. } => Err(Failure::Check(format!("<expr>: error[NotACell]: `{s}` is a hom cell"))),
        }
    };
    let (home, minus) = base(src)?;
    let (home2, plus) = base(tgt)?;
    let (h, cell) = match eval(&cx, expr)? {
        Value::Cell { home, cell } => (home, cell),
        Value::Hom { .. } => return Err(Failure::Check(format!("<expr>: error[NotACell]: `{expr}` is a hom cell"))),
    };
    if home != home2 || home != h {
        return Err(Failure::Check("<expr>: error[HomeMismatch]: cells live in different computads".into()));
    }
    let bc = BipointedComputad::new((*home).clone(), minus, plus)
        .map_err(|e| Failure::Check(format!("<expr>: error[{}]: {e}", e.code())))?;
    let factored = hom_factor(&bc, &cell).map_err(|e| Failure::Check(format!("<expr>: error[{}]: {e}", e.code())))?;
    Ok(emit_value(&Value::Hom { home: std::sync::Arc::new(bc), cell: factored }, format))
}

fn export(format: ExportFormat, file: Option<&Path>, tree: Option<&str>) -> Outcome {
    if let Some(t) = tree {
        let t: Tree = t.parse().map_err(|e| Failure::Usage(format!("invalid tree `{t}`: {e}")))?;
        return Ok(match format {
            ExportFormat::Dot => dot::tree_dot(&t),
            ExportFormat::Json => json::to_string(&json::computad_to_json(&free_computad(t.scheme().carrier()))),
        });
    }
    let path = file.expect("clap requires a file or a tree");
    let p = load(path)?;
    Ok(match format {
        ExportFormat::Json => json::to_string(&json::program_to_json(&p)),
        ExportFormat::Dot => p.computads().map(|(n, c)| dot::computad_dot(n.as_str(), c)).collect(),
    })
}

fn laws(max_nodes: usize, dims_upto: usize, loop_depth: usize) -> Outcome {
    let report = run_all(&LawConfig { max_nodes, dims_upto, loop_depth });
    let text = format!("{report}\n");
    if report.passed() {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check { file, format } => Ok(emit(&load(&file)?, format)),
        Command::Susp { file, format } => transform(Transform::Susp, &file, format),
        Command::Op { dims, file, format } => transform(Transform::Op(dims), &file, format),
        Command::Desusp { file, format } => transform(Transform::Desusp, &file, format),
        Command::Comp { n, k, m, format } => {
            let (cx, _) = context(None)?;
            Ok(emit_value(&eval(&cx, &format!("comp({n},{k},{m})[]"))?, format))
        }
        Command::Id { expr, input, format } => {
            let (cx, _) = context(input.as_deref())?;
            Ok(emit_value(&eval(&cx, &format!("id({expr})"))?, format))
        }
        Command::Eh { input, lhs, rhs } => eh(input.as_deref(), lhs.as_deref(), rhs.as_deref()),
        Command::Hom { src, tgt, input, format, action } => hom(&src, &tgt, input.as_deref(), format, &action),
        Command::Export { format, file, tree } => export(format, file.as_deref(), tree.as_deref()),
        Command::Laws { max_nodes, dims_upto, loop_depth } => laws(max_nodes, dims_upto, loop_depth),
    }
}

/// Run with `args` (including the program name), writing to `out` and `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Check(msg)) => {
            let _ = err.write_all(msg.as_bytes());
            if !msg.ends_with('\n') {
                let _ = err.write_all(b"\n");
            }
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
