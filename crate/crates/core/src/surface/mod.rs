//! The `.ctt` surface language: parsing, elaboration into kernel terms and
//! canonical printing.

mod elab;
mod syntax;
mod transform;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::computads::{free_computad, BipointedComputad, Cell, Computad, TermPath};
use crate::dimset::DimSet;
use crate::homcat::{hom_realize, HomCell};
use crate::metaops::{desuspend_computad, op_computad, suspend_computad};
use crate::name::Name;
use crate::trees::{Position, Tree};

pub use elab::{elaborate, Context};
use elab::contains_free;
pub use transform::{Transform, TransformError};
pub use syntax::{parse, parse_expr, Decl, Expr, GenDecl, HomeExpr, Loc, KEYWORDS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax,
    UnknownName,
    DuplicateName,
    HomeMismatch,
    NotACell,
    /// A kernel error, by code.
    Kernel(&'static str),
}

impl ErrorKind {
    pub fn code(&self) -> &'static str {
        match self {
            ErrorKind::Syntax => "SyntaxError",
            ErrorKind::UnknownName => "UnknownName",
            ErrorKind::DuplicateName => "DuplicateName",
            ErrorKind::HomeMismatch => "HomeMismatch",
            ErrorKind::NotACell => "NotACell",
            ErrorKind::Kernel(c) => c,
        }
    }
}

/// An error with the source location of the offending construct and, for
/// kernel errors, the path to the offending subterm.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct SurfaceError {
    pub kind: ErrorKind,
    pub loc: Loc,
    pub message: String,
    pub path: Option<TermPath>,
}

impl SurfaceError {
    pub fn new(kind: ErrorKind, loc: Loc, message: impl Into<String>) -> Self {
        SurfaceError { kind, loc, message: message.into(), path: None }
    }

    pub fn code(&self) -> &'static str {
        self.kind.code()
    }
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: error[{}]: {}", self.loc, self.code(), self.message)?;
        match &self.path {
            Some(p) if !p.segments().is_empty() => write!(f, " (at {p})"),
            _ => Ok(()),
        }
    }
}

/// An elaborated value together with the computad it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Cell { home: Arc<Computad>, cell: Cell },
    Hom { home: Arc<BipointedComputad>, cell: HomCell },
}

impl Value {
    pub fn dim(&self) -> usize {
        match self {
            Value::Cell { cell, .. } => cell.dim(),
            Value::Hom { cell, .. } => cell.dim(),
        }
    }

    pub fn as_cell(&self) -> Option<(&Arc<Computad>, &Cell)> {
        match self {
            Value::Cell { home, cell } => Some((home, cell)),
            Value::Hom { .. } => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Cell { cell, .. } => write!(f, "{cell}"),
            Value::Hom { cell, .. } => write!(f, "{cell}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Computad { name: Name, computad: Arc<Computad> },
    Let { name: Name, value: Value },
}

/// An elaborated file, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub items: Vec<Item>,
}

impl Program {
    pub fn computads(&self) -> impl Iterator<Item = (&Name, &Arc<Computad>)> {
        self.items.iter().filter_map(|i| match i {
            Item::Computad { name, computad } => Some((name, computad)),
            Item::Let { .. } => None,
        })
    }

    pub fn lets(&self) -> impl Iterator<Item = (&Name, &Value)> {
        self.items.iter().filter_map(|i| match i {
            Item::Let { name, value } => Some((name, value)),
            Item::Computad { .. } => None,
        })
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.lets().filter(|(n, _)| n.as_str() == name).map(|(_, v)| v).last()
    }

    /// Name of a declared computad equal to `c`, latest first.
    pub fn computad_name(&self, c: &Computad) -> Option<&Name> {
        self.computads().filter(|(_, x)| x.as_ref() == c).map(|(n, _)| n).last()
    }
}

/// Canonical block form of a computad declaration.
pub fn print_computad(name: &Name, c: &Computad) -> String {
    let mut out = format!("computad {name} {{\n");
    for (g, _, attach) in c.generators() {
        match attach {
            None => out.push_str(&format!("  {g} : * ;\n")),
            Some(s) => out.push_str(&format!("  {g} : {} -> {} ;\n", s.src, s.tgt)),
        }
    }
    out.push('}');
    out
}

/// Tree whose positions are exactly the generators of `c`, if they all
/// parse as positions.
fn pasting_tree(c: &Computad) -> Option<Tree> {
    fn build(paths: &[Vec<usize>]) -> Option<Tree> {
        let arity = paths.iter().filter(|p| p.len() == 1).map(|p| p[0]).max()?;
        let mut kids = Vec::new();
        for i in 1..=arity {
            let sub: Vec<Vec<usize>> = paths.iter().filter(|p| p.len() > 1 && p[0] == i).map(|p| p[1..].to_vec()).collect();
            kids.push(if sub.is_empty() { return None } else { build(&sub)? });
        }
        Some(Tree::new(kids))
    }
    let paths = c
        .generators()
        .map(|(g, _, _)| Position::parse(g).map(|p| p.path().to_vec()))
        .collect::<Option<Vec<_>>>()?;
    let t = build(&paths)?;
    (free_computad(t.scheme().carrier()) == *c).then_some(t)
}

/// A home annotation that elaborates to `c`.
fn describe_home(named: &[(&Name, &Arc<Computad>)], c: &Computad, allow_op: bool) -> Option<String> {
    if let Some((n, _)) = named.iter().rev().find(|(_, x)| x.as_ref() == c) {
        return Some(n.to_string());
    }
    if let Some(t) = pasting_tree(c) {
        return Some(format!("ps {t}"));
    }
    if let Ok(d) = desuspend_computad(c) {
        if suspend_computad(&d).computad == *c {
            if let Some(h) = describe_home(named, &d, true) {
                return Some(format!("susp({h})"));
            }
        }
    }
    if allow_op {
        for w in DimSet::subsets_upto(c.dim().unwrap_or(0)).into_iter().skip(1) {
            if let Some(h) = describe_home(named, &op_computad(&w, c), false) {
                return Some(format!("op{w}({h})"));
            }
        }
    }
    None
}

fn home_annotation(named: &[(&Name, &Arc<Computad>)], c: &Computad) -> String {
    describe_home(named, c, true).unwrap_or_else(|| {
        let body = print_computad(&Name::from("_"), c);
        body.trim_start_matches("computad _ ").to_string()
    })
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut named: Vec<(&Name, &Arc<Computad>)> = Vec::new();
        for item in &self.items {
            match item {
                Item::Computad { name, computad } => {
                    named.push((name, computad));
                    writeln!(f, "{}", print_computad(name, computad))?;
                }
                Item::Let { name, value } => {
                    let current = named.last().map(|(_, c)| c.as_ref());
                    let (home, body) = match value {
                        Value::Cell { home, cell } => (home.as_ref(), cell.to_string()),
                        Value::Hom { home, cell } => {
                            let loop_cell = hom_realize(home, cell).expect("hom values realize");
                            (&home.computad, format!("homfactor({loop_cell})"))
                        }
                    };
                    let implicit = match value {
                        Value::Cell { cell: Cell::Coh(c), .. } if c.sub.is_identity() => {
                            Some(home) == current || (current.is_none_or(|cur| !contains_free(cur, home)) && pasting_tree(home).as_ref() == Some(&c.tree))
                        }
                        _ => Some(home) == current,
                    };
                    if implicit {
                        writeln!(f, "let {name} = {body}")?;
                    } else {
                        writeln!(f, "let {name} in {} = {body}", home_annotation(&named, home))?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parse and elaborate a whole file.
pub fn load(src: &str) -> Result<Program, SurfaceError> {
    let decls = parse(src)?;
    let mut cx = Context::new();
    elaborate(&mut cx, &decls)?;
    Ok(cx.into_program())
}
