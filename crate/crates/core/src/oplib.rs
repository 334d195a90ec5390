//! Composition templates, identities, composites and the Eckmann-Hilton computad.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::computads::{
    boundary, typecheck, BipointedComputad, Cell, Computad, ComputadError, Leaf, Signature, Sphere,
    Substitution, TypeError,
};
use crate::name::Name;
use crate::trees::{src_inclusion, tgt_inclusion, Position, Tree, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpLibError {
    #[error(transparent)]
    Shape(#[from] TreeError),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error(transparent)]
    IllTyped(#[from] TypeError),
}

impl OpLibError {
    pub fn code(&self) -> &'static str {
        match self {
            OpLibError::Shape(_) => "InvalidShape",
            OpLibError::BoundaryMismatch(_) => "BoundaryMismatch",
            OpLibError::IllTyped(e) => e.code(),
        }
    }
}

fn top_of_disk(k: usize) -> Position {
    let mut path = vec![1; k];
    path.push(0);
    Position::from_path(path)
}

fn var(p: &Position) -> Cell {
    Cell::var(p.name(), p.dim())
}

/// The sphere of `comp_{n,k,m}`, over the positions of `comp_tree(n,k,m)`.
fn comp_sphere(n: usize, k: usize, m: usize, tree: &Tree) -> Result<Sphere, OpLibError> {
    if n == k + 1 && m == k + 1 {
        assert_eq!(tree.boundary(k), Tree::disk(k), "k-boundary of a codimension-1 composite");
        let top = top_of_disk(k);
        let s = &src_inclusion(k, tree)[&top];
        let t = &tgt_inclusion(k, tree)[&top];
        return Ok(Sphere::new(var(s), var(t)));
    }
    let d = n.max(m);
    let (n1, m1) = match n.cmp(&m) {
        std::cmp::Ordering::Equal => (n - 1, m - 1),
        std::cmp::Ordering::Greater => (n - 1, m),
        std::cmp::Ordering::Less => (n, m - 1),
    };
    assert_eq!(
        tree.boundary(d - 1),
        Tree::comp(n1, k, m1)?,
        "boundary of comp_tree({n},{k},{m})"
    );
    let lower = comp_cell(n1, k, m1)?;
    Ok(Sphere::new(
        lower.rename_positions(&src_inclusion(d - 1, tree)),
        lower.rename_positions(&tgt_inclusion(d - 1, tree)),
    ))
}

/// The `k`-composite of an `n`-cell and an `m`-cell, as a cell of the free
/// computad on `Pos(comp_tree(n,k,m))` with the identity substitution.
pub fn comp_cell(n: usize, k: usize, m: usize) -> Result<Cell, OpLibError> {
    let tree = Tree::comp(n, k, m)?;
    let sphere = comp_sphere(n, k, m, &tree)?;
    let sub = Substitution::identity(&tree);
    Ok(Cell::coh(tree, sphere, sub))
}

/// Extend an assignment on some positions of `tree` to all of them by
/// following boundaries; conflicting or missing values are errors.
pub fn fill_substitution<V: Leaf, S: Signature<V> + ?Sized>(
    sig: &S,
    tree: &Tree,
    partial: BTreeMap<Name, Cell<V>>,
) -> Result<Substitution<V>, OpLibError> {
    let mut positions = tree.positions();
    let mut assigned = partial;
    for k in assigned.keys() {
        if !Position::parse(k).is_some_and(|p| tree.contains_position(&p)) {
            return Err(OpLibError::BoundaryMismatch(format!("`{k}` is not a position of {tree}")));
        }
    }
    positions.reverse();
    for p in &positions {
        let Some(c) = assigned.get(&p.name()).cloned() else { continue };
        let (Some(s), Some(t)) = (p.src(), p.tgt()) else { continue };
        let b = boundary(sig, &c)?;
        for (q, x) in [(s, b.src), (t, b.tgt)] {
            match assigned.get(&q.name()) {
                Some(y) if *y != x => {
                    return Err(OpLibError::BoundaryMismatch(format!(
                        "position `{q}` would be both `{y}` and `{x}`"
                    )))
                }
                Some(_) => {}
                None => {
                    assigned.insert(q.name(), x);
                }
            }
        }
    }
    for p in &positions {
        if !assigned.contains_key(&p.name()) {
            return Err(OpLibError::BoundaryMismatch(format!("position `{p}` is not determined")));
        }
    }
    Ok(Substitution::new(assigned))
}

/// `id(c) = coh{D_n}{(d_n, d_n)}{d_n ↦ c}`.
pub fn identity_cell<V: Leaf, S: Signature<V> + ?Sized>(sig: &S, c: &Cell<V>) -> Result<Cell<V>, OpLibError> {
    let n = typecheck(sig, c)?;
    let tree = Tree::disk(n);
    let top = top_of_disk(n);
    let sub = fill_substitution(sig, &tree, BTreeMap::from([(top.name(), c.clone())]))?;
    Ok(Cell::coh(tree, Sphere::new(var(&top), var(&top)), sub))
}

/// `comp_k(c, c')`, defined when `tgt_k(c) = src_k(c')`.
pub fn compose<V: Leaf, S: Signature<V> + ?Sized>(
    sig: &S,
    c: &Cell<V>,
    k: usize,
    c2: &Cell<V>,
) -> Result<Cell<V>, OpLibError> {
    let n = typecheck(sig, c)?;
    let m = typecheck(sig, c2)?;
    let template = comp_cell(n, k, m)?;
    let t = crate::computads::tgt_k(sig, c, k)?;
    let s = crate::computads::src_k(sig, c2, k)?;
    if t != s {
        return Err(OpLibError::BoundaryMismatch(format!(
            "the {k}-target of `{c}` is `{t}` but the {k}-source of `{c2}` is `{s}`"
        )));
    }
    let coh = template.as_coh().expect("templates are coherences");
    let mut left = vec![1; n];
    left.push(0);
    let mut right = vec![1; k];
    right.push(2);
    right.extend(std::iter::repeat_n(1, m - k - 1));
    right.push(0);
    let partial = BTreeMap::from([
        (Position::from_path(left).name(), c.clone()),
        (Position::from_path(right).name(), c2.clone()),
    ]);
    let sub = fill_substitution(sig, &coh.tree, partial)?;
    Ok(Cell::coh(coh.tree.clone(), coh.sphere.clone(), sub))
}

/// One 0-generator `x` and two 2-generators `a, b : id x -> id x`, pointed at `x`.
pub fn eh_computad() -> BipointedComputad {
    let x = Name::from("x");
    let mut c = Computad::new();
    let build = |c: &mut Computad| -> Result<(), ComputadError> {
        c.add_generator(x.clone(), None)?;
        let idx = identity_cell(c, &Cell::var(x.clone(), 0)).expect("x is a 0-generator");
        for g in ["a", "b"] {
            c.add_generator(Name::from(g), Some(Sphere::new(idx.clone(), idx.clone())))?;
        }
        Ok(())
    };
    build(&mut c).expect("the Eckmann-Hilton computad is well formed");
    BipointedComputad { computad: c, base_minus: x.clone(), base_plus: x }
}
