//! Elaboration of surface declarations into kernel values.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::computads::{
    free_computad, src_k, tgt_k, typecheck, BipointedComputad, Cell, Computad, ComputadError,
    Sphere, Substitution, TypeError,
};
use crate::homcat::{hom_factor, HomError, HomSignature};
use crate::metaops::{op_cell, op_computad, suspend_cell, suspend_computad};
use crate::name::Name;
use crate::oplib::{comp_cell, compose, fill_substitution, identity_cell, OpLibError};
use crate::trees::{Position, Tree};

use super::syntax::{Decl, Expr, GenDecl, HomeExpr, Loc};
use super::{ErrorKind, Item, Program, SurfaceError, Value};

fn kernel(loc: Loc, code: &'static str, message: String) -> SurfaceError {
    SurfaceError::new(ErrorKind::Kernel(code), loc, message)
}

fn type_error(loc: Loc, e: TypeError) -> SurfaceError {
    SurfaceError { kind: ErrorKind::Kernel(e.code()), loc, message: e.kind.to_string(), path: Some(e.path) }
}

fn oplib_error(loc: Loc, e: OpLibError) -> SurfaceError {
    match e {
        OpLibError::IllTyped(t) => type_error(loc, t),
        e => kernel(loc, e.code(), e.to_string()),
    }
}

fn hom_error(loc: Loc, e: HomError) -> SurfaceError {
    match e {
        HomError::IllTyped(t) => type_error(loc, t),
        HomError::Desuspension(d) => SurfaceError {
            kind: ErrorKind::Kernel(d.code()),
            loc,
            message: d.kind.to_string(),
            path: Some(d.path),
        },
        e => kernel(loc, e.code(), e.to_string()),
    }
}

fn computad_error(loc: Loc, e: ComputadError) -> SurfaceError {
    match e {
        ComputadError::BadAttachment { name, error } => {
            let mut s = type_error(loc, error);
            s.message = format!("attaching sphere of `{name}`: {}", s.message);
            s
        }
        e => kernel(loc, e.code(), e.to_string()),
    }
}

fn free_on(tree: &Tree) -> Arc<Computad> {
    Arc::new(free_computad(tree.scheme().carrier()))
}

/// Names in scope while elaborating.
enum Scope<'a> {
    /// Let bindings and the generators of the current computad.
    Program(&'a Context),
    /// Positions of a tree; used for coherence spheres.
    Pasting(&'a Tree, Arc<Computad>),
}

/// Elaboration state: declared computads, bindings, and the computad that
/// bare generator names refer to.
#[derive(Debug, Clone, Default)]
pub struct Context {
    current: Option<(Name, Arc<Computad>)>,
    lets: BTreeMap<Name, Value>,
    items: Vec<Item>,
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    /// The computad declared last, if any.
    pub fn current(&self) -> Option<&Arc<Computad>> {
        self.current.as_ref().map(|(_, c)| c)
    }

    pub fn into_program(self) -> Program {
        Program { items: self.items }
    }

    fn bound(&self, name: &str) -> bool {
        self.lets.contains_key(name)
            || self.current().is_some_and(|c| c.contains(name))
            || self.items.iter().any(|i| matches!(i, Item::Computad { name: n, .. } if n.as_str() == name))
    }

    /// Elaborate generator declarations into a computad, with bare names
    /// resolving to the generators declared so far. Leaves `current` set to
    /// the result.
    fn build(&mut self, name: &Name, gens: &[GenDecl], fresh_names: bool) -> Result<Arc<Computad>, SurfaceError> {
        self.current = Some((name.clone(), Arc::new(Computad::new())));
        for g in gens {
            if fresh_names && self.bound(&g.name) {
                return Err(SurfaceError::new(ErrorKind::DuplicateName, g.loc, format!("`{}` is already bound", g.name)));
            }
            let partial = self.current.as_ref().unwrap().1.clone();
            let sphere = match &g.attach {
                None => None,
                Some((s, t)) => {
                    let mut cells = Vec::new();
                    for x in [s, t] {
                        let (h, c) = expect_cell(x.loc(), self.eval(x)?)?;
                        same_home(x.loc(), &partial, &h)?;
                        cells.push(c);
                    }
                    Some(Sphere::new(cells.remove(0), cells.remove(0)))
                }
            };
            let mut next = (*partial).clone();
            next.add_generator(g.name.clone(), sphere).map_err(|e| computad_error(g.loc, e))?;
            self.current = Some((name.clone(), Arc::new(next)));
        }
        Ok(self.current.as_ref().unwrap().1.clone())
    }

    fn home(&mut self, h: &HomeExpr) -> Result<Arc<Computad>, SurfaceError> {
        Ok(match h {
            HomeExpr::Named(n, loc) => match self.items.iter().rev().find_map(|i| match i {
                Item::Computad { name, computad } if name == n => Some(computad.clone()),
                _ => None,
            }) {
                Some(c) => c,
                None => return Err(SurfaceError::new(ErrorKind::UnknownName, *loc, format!("no computad named `{n}`"))),
            },
            HomeExpr::Pasting(t, _) => free_on(t),
            HomeExpr::Susp(h, _) => Arc::new(suspend_computad(&*self.home(h)?).computad),
            HomeExpr::Op(w, h, _) => Arc::new(op_computad(w, &*self.home(h)?)),
            HomeExpr::Inline(gens, _) => {
                let saved = self.current.take();
                let c = self.build(&Name::from("{..}"), gens, false);
                self.current = saved;
                c?
            }
        })
    }

    /// Elaborate one expression in this context.
    pub fn eval(&self, e: &Expr) -> Result<Value, SurfaceError> {
        eval(&Scope::Program(self), e)
    }
}

/// Whether every generator of `free` occurs in `home` with the same
/// attaching sphere.
pub(super) fn contains_free(home: &Computad, free: &Computad) -> bool {
    free.generators().all(|(g, d, a)| home.dim_of(g) == Some(d) && home.attachment(g) == a)
}

fn same_home(loc: Loc, a: &Arc<Computad>, b: &Arc<Computad>) -> Result<(), SurfaceError> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(SurfaceError::new(ErrorKind::HomeMismatch, loc, "cells live in different computads"))
    }
}

fn expect_cell(loc: Loc, v: Value) -> Result<(Arc<Computad>, Cell), SurfaceError> {
    match v {
        Value::Cell { home, cell } => Ok((home, cell)),
        Value::Hom { .. } => Err(SurfaceError::new(ErrorKind::NotACell, loc, "expected a cell, found a hom cell")),
    }
}

fn eval(scope: &Scope, e: &Expr) -> Result<Value, SurfaceError> {
    let loc = e.loc();
    match e {
        Expr::Name(n, _) => match scope {
            Scope::Program(cx) => {
                if let Some((_, c)) = &cx.current {
                    if let Some(cell) = c.var(n) {
                        return Ok(Value::Cell { home: c.clone(), cell });
                    }
                }
                if let Some(v) = cx.lets.get(n) {
                    return Ok(v.clone());
                }
                match &cx.current {
                    Some((cn, _)) => Err(SurfaceError::new(
                        ErrorKind::UnknownName,
                        loc,
                        format!("`{n}` is neither bound nor a generator of `{cn}`"),
                    )),
                    None => Err(SurfaceError::new(ErrorKind::UnknownName, loc, format!("`{n}` is not bound"))),
                }
            }
            Scope::Pasting(tree, home) => match Position::parse(n) {
                Some(p) if tree.contains_position(&p) => {
                    Ok(Value::Cell { home: home.clone(), cell: Cell::var(n.clone(), p.dim()) })
                }
                _ => Err(SurfaceError::new(
                    ErrorKind::UnknownName,
                    loc,
                    format!("`{n}` is not a position of {tree}"),
                )),
            },
        },
        Expr::Coh { tree, src, tgt, sub, .. } => {
            let pos_home = free_on(tree);
            let inner = Scope::Pasting(tree, pos_home.clone());
            let mut sphere = Vec::new();
            for x in [src, tgt] {
                let (h, c) = expect_cell(x.loc(), eval(&inner, x)?)?;
                same_home(x.loc(), &h, &pos_home)?;
                sphere.push(c);
            }
            let sphere = Sphere::new(sphere.remove(0), sphere.remove(0));
            let (home, sub) = if sub.is_empty() {
                let home = match scope {
                    Scope::Program(cx) => cx.current.as_ref().map(|(_, c)| c.clone()),
                    Scope::Pasting(_, h) => Some(h.clone()),
                };
                let home = home.filter(|h| contains_free(h, &pos_home)).unwrap_or(pos_home);
                (home, Substitution::identity(tree))
            } else {
                let mut home: Option<Arc<Computad>> = None;
                let mut partial = BTreeMap::new();
                for (p, ploc, x) in sub {
                    let (h, c) = expect_cell(x.loc(), eval(scope, x)?)?;
                    match &home {
                        Some(h0) => same_home(x.loc(), h0, &h)?,
                        None => home = Some(h),
                    }
                    if partial.insert(p.clone(), c).is_some() {
                        return Err(SurfaceError::new(ErrorKind::DuplicateName, *ploc, format!("position `{p}` assigned twice")));
                    }
                }
                let home = home.expect("nonempty substitution");
                let full = fill_substitution(home.as_ref(), tree, partial).map_err(|e| oplib_error(loc, e))?;
                (home, full)
            };
            let cell = Cell::coh(tree.clone(), sphere, sub);
            typecheck(home.as_ref(), &cell).map_err(|e| type_error(loc, e))?;
            Ok(Value::Cell { home, cell })
        }
        Expr::Comp { n, k, m, args: None, .. } => {
            let cell = comp_cell(*n, *k, *m).map_err(|e| oplib_error(loc, e))?;
            Ok(Value::Cell { home: free_on(&Tree::comp(*n, *k, *m).unwrap()), cell })
        }
        Expr::Comp { n, k, m, args: Some(args), .. } => {
            let (a, b) = (eval(scope, &args.0)?, eval(scope, &args.1)?);
            for (v, want, x) in [(&a, n, &args.0), (&b, m, &args.1)] {
                if v.dim() != *want {
                    return Err(kernel(
                        x.loc(),
                        "DimensionMismatch",
                        format!("comp({n},{k},{m}) expects a {want}-cell here, found a {}-cell", v.dim()),
                    ));
                }
            }
            match (a, b) {
                (Value::Cell { home, cell: c1 }, Value::Cell { home: h2, cell: c2 }) => {
                    same_home(args.1.loc(), &home, &h2)?;
                    let cell = compose(home.as_ref(), &c1, *k, &c2).map_err(|e| oplib_error(loc, e))?;
                    Ok(Value::Cell { home, cell })
                }
                (Value::Hom { home, cell: c1 }, Value::Hom { home: h2, cell: c2 }) => {
                    if home != h2 {
                        return Err(SurfaceError::new(ErrorKind::HomeMismatch, args.1.loc(), "hom cells of different homs"));
                    }
                    let cell = compose(&HomSignature(&home), &c1, *k, &c2).map_err(|e| oplib_error(loc, e))?;
                    Ok(Value::Hom { home, cell })
                }
                _ => Err(SurfaceError::new(ErrorKind::HomeMismatch, args.1.loc(), "cannot compose a cell with a hom cell")),
            }
        }
        Expr::Id(x, _) => match eval(scope, x)? {
            Value::Cell { home, cell } => {
                let cell = identity_cell(home.as_ref(), &cell).map_err(|e| oplib_error(loc, e))?;
                Ok(Value::Cell { home, cell })
            }
            Value::Hom { home, cell } => {
                let cell = identity_cell(&HomSignature(&home), &cell).map_err(|e| oplib_error(loc, e))?;
                Ok(Value::Hom { home, cell })
            }
        },
        Expr::Susp(x, _) => {
            let (home, cell) = expect_cell(x.loc(), eval(scope, x)?)?;
            Ok(Value::Cell { home: Arc::new(suspend_computad(&home).computad), cell: suspend_cell(&cell) })
        }
        Expr::Op(w, x, _) => {
            let (home, cell) = expect_cell(x.loc(), eval(scope, x)?)?;
            Ok(Value::Cell { home: Arc::new(op_computad(w, &home)), cell: op_cell(w, &cell) })
        }
        Expr::HomFactor(x, _) => {
            let (home, cell) = expect_cell(x.loc(), eval(scope, x)?)?;
            hom_value(loc, &home, &cell)
        }
    }
}

/// The hom factorization of a loop cell, based at its 0-boundaries.
pub(super) fn hom_value(loc: Loc, home: &Computad, cell: &Cell) -> Result<Value, SurfaceError> {
    if cell.dim() == 0 {
        return Err(kernel(loc, "NotALoop", "a 0-cell has no hom factorization".into()));
    }
    let base = |b: Result<Cell, TypeError>| -> Result<Name, SurfaceError> {
        let b = b.map_err(|e| type_error(loc, e))?;
        b.as_var().cloned().ok_or_else(|| kernel(loc, "NotALoop", format!("0-boundary `{b}` is not a generator")))
    };
    let minus = base(src_k(home, cell, 0))?;
    let plus = base(tgt_k(home, cell, 0))?;
    let bc = BipointedComputad::new(home.clone(), minus, plus).map_err(|e| computad_error(loc, e))?;
    let h = hom_factor(&bc, cell).map_err(|e| hom_error(loc, e))?;
    Ok(Value::Hom { home: Arc::new(bc), cell: h })
}

/// Elaborate declarations in order, stopping at the first error.
pub fn elaborate(cx: &mut Context, decls: &[Decl]) -> Result<(), SurfaceError> {
    for d in decls {
        match d {
            Decl::Computad { name, loc, gens } => {
                if cx.bound(name) {
                    return Err(SurfaceError::new(ErrorKind::DuplicateName, *loc, format!("`{name}` is already bound")));
                }
                let c = cx.build(name, gens, true)?;
                cx.items.push(Item::Computad { name: name.clone(), computad: c });
            }
            Decl::Let { name, loc, home, body } => {
                if cx.bound(name) {
                    return Err(SurfaceError::new(ErrorKind::DuplicateName, *loc, format!("`{name}` is already bound")));
                }
                let v = match home {
                    None => cx.eval(body)?,
                    Some(h) => {
                        let c = cx.home(h)?;
                        let saved = cx.current.replace((Name::from(h.to_string()), c.clone()));
                        let v = cx.eval(body);
                        cx.current = saved;
                        let v = v?;
                        let actual = match &v {
                            Value::Cell { home, .. } => home.clone(),
                            Value::Hom { home, .. } => Arc::new(home.computad.clone()),
                        };
                        same_home(body.loc(), &c, &actual)?;
                        v
                    }
                };
                cx.lets.insert(name.clone(), v.clone());
                cx.items.push(Item::Let { name: name.clone(), value: v });
            }
        }
    }
    Ok(())
}
