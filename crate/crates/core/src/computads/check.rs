//! Boundaries, supports, fullness and typechecking of cells.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use std::fmt;

use thiserror::Error;

use super::cell::{Cell, Coherence, Leaf, Sphere, Substitution};
use crate::name::Name;
use crate::trees::{src_inclusion, tgt_inclusion, Position, Tree};

/// Where the generators of a computad-like context come from.
pub trait Signature<V> {
    fn generator_dim(&self, gen: &V) -> Option<usize>;
    /// Attaching sphere; `None` for 0-generators and unknown names.
    fn generator_boundary(&self, gen: &V) -> Option<Sphere<V>>;
}

/// Path from the root of a term to a subterm, e.g. `sub[1.0]/sphere.src`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermPath(Vec<String>);

impl TermPath {
    pub fn root() -> Self {
        TermPath::default()
    }

    pub fn segments(&self) -> &[String] {
        &self.0
    }

    pub fn push(&mut self, seg: impl Into<String>) {
        self.0.push(seg.into());
    }

    pub fn pop(&mut self) {
        self.0.pop();
    }

    pub fn prepend(mut self, seg: impl Into<String>) -> Self {
        self.0.insert(0, seg.into());
        self
    }
}

impl fmt::Display for TermPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("<root>")
        } else {
            f.write_str(&self.0.join("/"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeErrorKind {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("sphere is not parallel: {0}")]
    NotParallel(String),
    #[error("sphere is not full over {tree}: {detail}")]
    NotFull { tree: String, detail: String },
    #[error("bad substitution: {0}")]
    BadSubstitution(String),
}

impl TypeErrorKind {
    pub fn code(&self) -> &'static str {
        match self {
            TypeErrorKind::UnknownGenerator(_) => "UnknownGenerator",
            TypeErrorKind::DimensionMismatch(_) => "DimensionMismatch",
            TypeErrorKind::NotParallel(_) => "NotParallel",
            TypeErrorKind::NotFull { .. } => "NotFull",
            TypeErrorKind::BadSubstitution(_) => "BadSubstitution",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} (at {path})")]
pub struct TypeError {
    pub kind: TypeErrorKind,
    pub path: TermPath,
}

impl TypeError {
    pub fn new(kind: TypeErrorKind) -> Self {
        TypeError { kind, path: TermPath::root() }
    }

    pub fn code(&self) -> &'static str {
        self.kind.code()
    }

    fn at(mut self, seg: impl Into<String>) -> Self {
        self.path = self.path.prepend(seg);
        self
    }
}

fn dim_err(msg: String) -> TypeError {
    TypeError::new(TypeErrorKind::DimensionMismatch(msg))
}

/// The free computad on the positions of a tree, without materializing it.
#[derive(Debug, Clone, Copy)]
pub struct PastingContext<'a>(pub &'a Tree);

impl Signature<Name> for PastingContext<'_> {
    fn generator_dim(&self, gen: &Name) -> Option<usize> {
        let p = Position::parse(gen)?;
        self.0.contains_position(&p).then(|| p.dim())
    }

    fn generator_boundary(&self, gen: &Name) -> Option<Sphere<Name>> {
        let p = Position::parse(gen)?;
        if !self.0.contains_position(&p) {
            return None;
        }
        let (s, t) = (p.src()?, p.tgt()?);
        Some(Sphere::new(Cell::var(s.name(), s.dim()), Cell::var(t.name(), t.dim())))
    }
}

/// Apply a position-keyed substitution to a cell over positions.
pub fn substitute<V: Leaf>(c: &Cell<Name>, sub: &Substitution<V>) -> Result<Cell<V>, TypeError> {
    c.bind(&mut |p, _| {
        sub.get(p).cloned().ok_or_else(|| {
            TypeError::new(TypeErrorKind::BadSubstitution(format!("no cell assigned to `{p}`")))
        })
    })
}

pub fn substitute_sphere<V: Leaf>(
    s: &Sphere<Name>,
    sub: &Substitution<V>,
) -> Result<Sphere<V>, TypeError> {
    Ok(Sphere::new(substitute(&s.src, sub)?, substitute(&s.tgt, sub)?))
}

/// `ty(var v) = attach(v)`, `ty(coh{B}{A}{τ}) = τ(A)`.
pub fn boundary<V: Leaf, S: Signature<V> + ?Sized>(sig: &S, c: &Cell<V>) -> Result<Sphere<V>, TypeError> {
    match c {
        Cell::Var { gen, dim } => {
            if *dim == 0 {
                return Err(dim_err(format!("0-cell `{gen}` has no boundary")));
            }
            sig.generator_boundary(gen)
                .ok_or_else(|| TypeError::new(TypeErrorKind::UnknownGenerator(gen.to_string())))
        }
        Cell::Coh(coh) => substitute_sphere(&coh.sphere, &coh.sub),
    }
}

pub fn src<V: Leaf, S: Signature<V> + ?Sized>(sig: &S, c: &Cell<V>) -> Result<Cell<V>, TypeError> {
    Ok(boundary(sig, c)?.src)
}

pub fn tgt<V: Leaf, S: Signature<V> + ?Sized>(sig: &S, c: &Cell<V>) -> Result<Cell<V>, TypeError> {
    Ok(boundary(sig, c)?.tgt)
}

/// Iterated source down to dimension `k`.
pub fn src_k<V: Leaf, S: Signature<V> + ?Sized>(sig: &S, c: &Cell<V>, k: usize) -> Result<Cell<V>, TypeError> {
    let mut cur = c.clone();
    while cur.dim() > k {
        cur = src(sig, &cur)?;
    }
    Ok(cur)
}

pub fn tgt_k<V: Leaf, S: Signature<V> + ?Sized>(sig: &S, c: &Cell<V>, k: usize) -> Result<Cell<V>, TypeError> {
    let mut cur = c.clone();
    while cur.dim() > k {
        cur = tgt(sig, &cur)?;
    }
    Ok(cur)
}

/// Generators a cell depends on, closed under attaching spheres.
pub fn support<V: Leaf, S: Signature<V> + ?Sized>(sig: &S, c: &Cell<V>) -> Result<BTreeSet<V>, TypeError> {
    let mut out = BTreeSet::new();
    add_support(sig, c, &mut out)?;
    Ok(out)
}

fn add_support<V: Leaf, S: Signature<V> + ?Sized>(
    sig: &S,
    c: &Cell<V>,
    out: &mut BTreeSet<V>,
) -> Result<(), TypeError> {
    match c {
        Cell::Var { gen, dim } => {
            if !out.insert(gen.clone()) {
                return Ok(());
            }
            if *dim > 0 {
                let b = boundary(sig, c)?;
                add_support(sig, &b.src, out)?;
                add_support(sig, &b.tgt, out)?;
            }
            Ok(())
        }
        Cell::Coh(coh) => {
            for (_, x) in coh.sub.iter() {
                add_support(sig, x, out)?;
            }
            Ok(())
        }
    }
}

/// `None` when `sphere` is full over `tree`, otherwise a description of the
/// first defect. Dimensions must already agree.
pub fn fullness_defect(tree: &Tree, sphere: &Sphere<Name>) -> Result<Option<String>, TypeError> {
    let n = sphere.dim();
    if tree.dim() > n + 1 {
        return Err(dim_err(format!(
            "tree {tree} of dimension {} is too big for a sphere of dimension {n}",
            tree.dim()
        )));
    }
    let ctx = PastingContext(tree);
    for (side, cell, incl) in [
        ("source", &sphere.src, src_inclusion(n, tree)),
        ("target", &sphere.tgt, tgt_inclusion(n, tree)),
    ] {
        let supp = support(&ctx, cell)?;
        let image: BTreeSet<Name> = incl.values().map(Position::name).collect();
        if supp != image {
            let missing: Vec<_> = image.difference(&supp).map(Name::to_string).collect();
            let extra: Vec<_> = supp.difference(&image).map(Name::to_string).collect();
            let mut detail = format!("{side} support");
            if !missing.is_empty() {
                detail.push_str(&format!(" misses {}", missing.join(", ")));
            }
            if !extra.is_empty() {
                if !missing.is_empty() {
                    detail.push_str(" and");
                }
                detail.push_str(&format!(" has extra {}", extra.join(", ")));
            }
            return Ok(Some(detail));
        }
    }
    Ok(None)
}

pub fn is_full(tree: &Tree, sphere: &Sphere<Name>) -> Result<bool, TypeError> {
    Ok(fullness_defect(tree, sphere)?.is_none())
}

/// Coherence nodes already checked during one top-level call, keyed by
/// address; terms share subterms heavily.
type Seen<V> = HashMap<*const Coherence<V>, usize>;

/// Check a cell; returns its dimension.
pub fn typecheck<V: Leaf, S: Signature<V> + ?Sized>(sig: &S, c: &Cell<V>) -> Result<usize, TypeError> {
    tc(sig, c, &mut Seen::new())
}

fn tc<V: Leaf, S: Signature<V> + ?Sized>(sig: &S, c: &Cell<V>, seen: &mut Seen<V>) -> Result<usize, TypeError> {
    match c {
        Cell::Var { gen, dim } => match sig.generator_dim(gen) {
            None => Err(TypeError::new(TypeErrorKind::UnknownGenerator(gen.to_string()))),
            Some(d) if d != *dim => Err(dim_err(format!(
                "generator `{gen}` has dimension {d}, term says {dim}"
            ))),
            Some(d) => Ok(d),
        },
        Cell::Coh(coh) => {
            let key = Arc::as_ptr(coh);
            if let Some(d) = seen.get(&key) {
                return Ok(*d);
            }
            let tree = &coh.tree;
            let n = check_sphere(&PastingContext(tree), &coh.sphere).map_err(|e| e.at("sphere"))?;
            if let Some(detail) = fullness_defect(tree, &coh.sphere).map_err(|e| e.at("sphere"))? {
                return Err(TypeError::new(TypeErrorKind::NotFull { tree: tree.to_string(), detail })
                    .at("sphere"));
            }
            sub_check(sig, tree, &coh.sub, seen)?;
            seen.insert(key, n + 1);
            Ok(n + 1)
        }
    }
}

/// Check both cells and parallelism; returns the sphere's dimension.
pub fn check_sphere<V: Leaf, S: Signature<V> + ?Sized>(sig: &S, s: &Sphere<V>) -> Result<usize, TypeError> {
    let mut seen = Seen::new();
    let a = tc(sig, &s.src, &mut seen).map_err(|e| e.at("src"))?;
    let b = tc(sig, &s.tgt, &mut seen).map_err(|e| e.at("tgt"))?;
    if a != b {
        return Err(dim_err(format!("source has dimension {a}, target {b}")));
    }
    if a > 0 {
        let bs = boundary(sig, &s.src).map_err(|e| e.at("src"))?;
        let bt = boundary(sig, &s.tgt).map_err(|e| e.at("tgt"))?;
        if bs != bt {
            let what = if bs.src != bt.src { "sources" } else { "targets" };
            return Err(TypeError::new(TypeErrorKind::NotParallel(format!(
                "the {what} of `{}` and `{}` differ",
                s.src, s.tgt
            ))));
        }
    }
    Ok(a)
}

/// A substitution out of `Pos(tree)` must be total and a globular map.
pub fn check_substitution<V: Leaf, S: Signature<V> + ?Sized>(
    sig: &S,
    tree: &Tree,
    sub: &Substitution<V>,
) -> Result<(), TypeError> {
    sub_check(sig, tree, sub, &mut Seen::new())
}

fn sub_check<V: Leaf, S: Signature<V> + ?Sized>(
    sig: &S,
    tree: &Tree,
    sub: &Substitution<V>,
    seen: &mut Seen<V>,
) -> Result<(), TypeError> {
    let positions = tree.positions();
    let bad = |msg: String| TypeError::new(TypeErrorKind::BadSubstitution(msg));
    for k in sub.keys() {
        match Position::parse(k) {
            Some(p) if tree.contains_position(&p) => {}
            _ => return Err(bad(format!("`{k}` is not a position of {tree}"))),
        }
    }
    for p in &positions {
        let key = p.name();
        let seg = format!("sub[{key}]");
        let c = sub.get(&key).ok_or_else(|| bad(format!("no cell assigned to `{key}`")))?;
        let d = tc(sig, c, seen).map_err(|e| e.at(seg.clone()))?;
        if d != p.dim() {
            return Err(dim_err(format!(
                "position `{key}` has dimension {}, assigned cell has {d}",
                p.dim()
            ))
            .at(seg));
        }
        if let (Some(s), Some(t)) = (p.src(), p.tgt()) {
            let b = boundary(sig, c).map_err(|e| e.at(seg.clone()))?;
            let (want_s, want_t) = (&sub.as_map()[&s.name()], &sub.as_map()[&t.name()]);
            if &b.src != want_s || &b.tgt != want_t {
                let which = if &b.src != want_s { ("source", s) } else { ("target", t) };
                return Err(bad(format!(
                    "the {} of the cell at `{key}` is not the cell at `{}`",
                    which.0, which.1
                ))
                .at(seg));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str, d: usize) -> Cell {
        Cell::var(Name::from(s), d)
    }

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    #[test]
    fn pasting_context_boundaries() {
        let b = t("[[],[]]");
        let ctx = PastingContext(&b);
        assert_eq!(boundary(&ctx, &v("1.0", 1)).unwrap(), Sphere::new(v("0", 0), v("1", 0)));
        assert_eq!(ctx.generator_dim(&Name::from("2.0")), Some(1));
        assert_eq!(ctx.generator_dim(&Name::from("3.0")), None);
    }

    #[test]
    fn support_of_a_var_unfolds_boundaries() {
        let b = t("[[],[]]");
        let s = support(&PastingContext(&b), &v("1.0", 1)).unwrap();
        let names: Vec<_> = s.iter().map(|n| n.to_string()).collect();
        assert_eq!(names, ["0", "1", "1.0"]);
    }

    #[test]
    fn fullness_examples() {
        let b = t("[[],[]]");
        assert!(is_full(&b, &Sphere::new(v("0", 0), v("2", 0))).unwrap());
        assert!(!is_full(&b, &Sphere::new(v("0", 0), v("1", 0))).unwrap());
        for n in 0..4 {
            let d = Tree::disk(n);
            let top = d.positions().pop().unwrap();
            let s = Sphere::new(v(&top.to_string(), n), v(&top.to_string(), n));
            assert!(is_full(&d, &s).unwrap(), "disk {n}");
        }
        // tree too big for a 0-sphere
        assert!(is_full(&t("[[[]]]"), &Sphere::new(v("0", 0), v("1", 0))).is_err());
    }

    #[test]
    fn typecheck_reports_not_full_with_path() {
        let b = t("[[],[]]");
        let c = Cell::coh(b.clone(), Sphere::new(v("0", 0), v("1", 0)), Substitution::identity(&b));
        let err = typecheck(&PastingContext(&b), &c).unwrap_err();
        assert_eq!(err.code(), "NotFull");
        assert_eq!(err.path.to_string(), "sphere");
        assert!(err.to_string().contains("misses 2"), "{err}");
    }

    #[test]
    fn typecheck_reports_not_parallel() {
        // a sphere of dimension 1 whose cells have different sources
        let b = t("[[],[]]");
        let s = Sphere::new(v("1.0", 1), v("2.0", 1));
        let c = Cell::coh(b.clone(), s, Substitution::identity(&b));
        let err = typecheck(&PastingContext(&b), &c).unwrap_err();
        assert_eq!(err.code(), "NotParallel");
    }

    #[test]
    fn typecheck_unknown_generator() {
        let b = t("[]");
        let err = typecheck(&PastingContext(&b), &v("nope", 0)).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::UnknownGenerator("nope".into()));
    }

    #[test]
    fn typecheck_bad_substitution_path() {
        let b = t("[[],[]]");
        let mut sub = Substitution::identity(&b);
        sub.insert(Name::from("2.0"), v("1.0", 1));
        let c = Cell::coh(b.clone(), Sphere::new(v("0", 0), v("2", 0)), sub);
        let err = typecheck(&PastingContext(&b), &c).unwrap_err();
        assert_eq!(err.code(), "BadSubstitution");
        assert_eq!(err.path.to_string(), "sub[2.0]");
    }
}
