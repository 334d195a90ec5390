//! Golden cases shared by the golden and acceptance targets.

use std::path::PathBuf;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const C101: &str = "../../samples/comp101.ctt";
const EH: &str = "../../samples/eh.ctt";
const WHISKER: &str = "../../samples/whisker.ctt";

pub const CASES: &[Case] = &[
    Case { name: "check_comp101", args: &["check", C101], exit: 0 },
    Case { name: "check_eh", args: &["check", EH], exit: 0 },
    Case { name: "check_whisker", args: &["check", WHISKER], exit: 0 },
    Case { name: "check_eh_json", args: &["check", "--format", "json", EH], exit: 0 },
    Case { name: "check_notfull", args: &["check", "../../samples/bad_notfull.ctt"], exit: 1 },
    Case { name: "check_notparallel", args: &["check", "../../samples/bad_notparallel.ctt"], exit: 1 },
    Case { name: "susp_comp101", args: &["susp", C101], exit: 0 },
    Case { name: "susp_eh", args: &["susp", EH], exit: 0 },
    Case { name: "desusp_comp101", args: &["desusp", C101], exit: 1 },
    Case { name: "op1_comp101", args: &["op", "--dims", "1", C101], exit: 0 },
    Case { name: "op2_eh", args: &["op", "--dims", "2", EH], exit: 0 },
    Case { name: "op12_whisker", args: &["op", "--dims", "1,2", WHISKER], exit: 0 },
    Case { name: "export_dot_tree", args: &["export", "--format", "dot", "--tree", "[[[]],[]]"], exit: 0 },
    Case { name: "export_dot_whisker", args: &["export", "--format", "dot", WHISKER], exit: 0 },
    Case { name: "export_json_comp101", args: &["export", "--format", "json", C101], exit: 0 },
    Case { name: "comp_212", args: &["comp", "2", "1", "2"], exit: 0 },
    Case { name: "id_f", args: &["id", "--in", C101, "f"], exit: 0 },
    Case { name: "eh", args: &["eh"], exit: 0 },
    Case { name: "hom_factor", args: &["hom", "--src", "x", "--tgt", "x", "--in", EH, "factor", "comp(2,0,2)[a, b]"], exit: 0 },
    Case { name: "laws_small", args: &["laws", "--max-nodes", "3", "--dims-upto", "2", "--loop-depth", "1"], exit: 0 },
    Case { name: "usage_error", args: &["op", "--dims", "0", C101], exit: 2 },
];

pub fn fixture(name: &str, ext: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.{ext}"))
}

pub struct Run {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("omegatt").chain(args.iter().copied());
    let exit = omegatt_cli::run(argv, &mut out, &mut err);
    Run { exit, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

/// Mismatches against the committed fixtures; rewrites them instead when
/// `UPDATE_GOLDEN` is set.
pub fn check_case(c: &Case) -> Vec<String> {
    let r = run(c.args);
    let mut bad = Vec::new();
    if r.exit != c.exit {
        bad.push(format!("{}: exit {} (want {})", c.name, r.exit, c.exit));
    }
    for (ext, got) in [("out", &r.stdout), ("err", &r.stderr)] {
        let path = fixture(c.name, ext);
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            if got.is_empty() {
                let _ = std::fs::remove_file(&path);
            } else {
                std::fs::write(&path, got).unwrap();
            }
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_default();
        if want != *got {
            bad.push(format!("{}.{ext} differs from {}", c.name, path.display()));
        }
    }
    bad
}
