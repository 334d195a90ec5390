//! Hom ω-categories of free ω-categories: loop cells, indecomposables and the
//! factorization of loop cells over the (never materialized) hom computad.

use std::fmt;

use thiserror::Error;

use crate::computads::{
    boundary, src_k, tgt_k, typecheck, BipointedComputad, Cell, Leaf, Signature, Sphere,
    Substitution, TypeError,
};
use crate::dimset::DimSet;
use crate::metaops::{
    check_desuspended_fullness, desuspend_sphere, minus, op_bipointed, op_cell, op_cell_with,
    plus, suspend_sphere, DesuspendError, DesuspendErrorKind,
};
use crate::globular::suspended_name;
use crate::name::Name;
use crate::trees::Tree;

/// A generator of the hom computad: an indecomposable loop cell, one
/// dimension lower than its underlying cell.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HomGenerator(pub Cell);

impl fmt::Display for HomGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "homgen({})", self.0)
    }
}

impl Leaf for HomGenerator {}

/// A cell of the hom ω-category, written over hom generators.
pub type HomCell = Cell<HomGenerator>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("`{0}` is not a loop cell between the basepoints")]
    NotALoop(String),
    #[error("`{0}` is not an indecomposable loop cell")]
    NotAGenerator(String),
    #[error(transparent)]
    IllTyped(#[from] TypeError),
    #[error(transparent)]
    Desuspension(#[from] DesuspendError),
}

impl HomError {
    pub fn code(&self) -> &'static str {
        match self {
            HomError::NotALoop(_) => "NotALoop",
            HomError::NotAGenerator(_) => "NotAGenerator",
            HomError::IllTyped(e) => e.code(),
            HomError::Desuspension(e) => e.code(),
        }
    }
}

/// Whether the iterated 0-source and 0-target of `c` are the basepoints.
pub fn is_loop_cell(bc: &BipointedComputad, c: &Cell) -> Result<bool, HomError> {
    let d = typecheck(&bc.computad, c)?;
    if d == 0 {
        return Ok(false);
    }
    Ok(src_k(&bc.computad, c, 0)? == bc.base_minus_cell()
        && tgt_k(&bc.computad, c, 0)? == bc.base_plus_cell())
}

fn require_loop(bc: &BipointedComputad, c: &Cell) -> Result<(), HomError> {
    if is_loop_cell(bc, c)? {
        Ok(())
    } else {
        Err(HomError::NotALoop(c.to_string()))
    }
}

/// If `c = coh{ΣB}{ΣA}{τ}` with `τ` sending the root sectors to the
/// basepoints, returns `(B, A)`.
fn decompose<'a>(bc: &BipointedComputad, c: &'a Cell) -> Result<Option<(&'a Tree, Sphere, &'a Substitution)>, HomError> {
    let Cell::Coh(coh) = c else { return Ok(None) };
    let [inner] = coh.tree.children() else { return Ok(None) };
    if coh.sub.get(&minus()) != Some(&bc.base_minus_cell()) || coh.sub.get(&plus()) != Some(&bc.base_plus_cell()) {
        return Ok(None);
    }
    let sphere = match desuspend_sphere(&coh.sphere) {
        Ok(s) => s,
        Err(DesuspendError { kind: DesuspendErrorKind::NotASuspension(_), .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    check_desuspended_fullness(inner, &sphere)?;
    Ok(Some((inner, sphere, &coh.sub)))
}

pub fn is_indecomposable(bc: &BipointedComputad, c: &Cell) -> Result<bool, HomError> {
    require_loop(bc, c)?;
    Ok(decompose(bc, c)?.is_none())
}

/// Write a loop cell over the hom generators.
pub fn hom_factor(bc: &BipointedComputad, c: &Cell) -> Result<HomCell, HomError> {
    require_loop(bc, c)?;
    factor(bc, c)
}

fn factor(bc: &BipointedComputad, c: &Cell) -> Result<HomCell, HomError> {
    match decompose(bc, c)? {
        None => Ok(Cell::var(HomGenerator(c.clone()), c.dim() - 1)),
        Some((inner, sphere, sub)) => {
            let mut out = Substitution::new(Default::default());
            for p in inner.positions() {
                let x = sub.get(&suspended_name(&p.name())).expect("substitution is total");
                out.insert(p.name(), factor(bc, x)?);
            }
            Ok(Cell::coh(inner.clone(), sphere, out))
        }
    }
}

/// Inverse of [`hom_factor`]: unwrap generators and suspend coherences,
/// sending the new root sectors to the basepoints.
pub fn hom_realize(bc: &BipointedComputad, h: &HomCell) -> Result<Cell, HomError> {
    match h {
        Cell::Var { gen, dim } => {
            if gen.0.dim() != dim + 1 {
                return Err(HomError::NotAGenerator(gen.0.to_string()));
            }
            Ok(gen.0.clone())
        }
        Cell::Coh(coh) => {
            let mut sub = Substitution::new(Default::default());
            sub.insert(minus(), bc.base_minus_cell());
            sub.insert(plus(), bc.base_plus_cell());
            for (p, x) in coh.sub.iter() {
                sub.insert(suspended_name(p), hom_realize(bc, x)?);
            }
            Ok(Cell::coh(coh.tree.suspend(), suspend_sphere(&coh.sphere), sub))
        }
    }
}

/// The hom computad as a signature: generators are indecomposable loop
/// cells, attached along the factorizations of their boundaries.
#[derive(Debug, Clone, Copy)]
pub struct HomSignature<'a>(pub &'a BipointedComputad);

impl Signature<HomGenerator> for HomSignature<'_> {
    fn generator_dim(&self, gen: &HomGenerator) -> Option<usize> {
        match is_indecomposable(self.0, &gen.0) {
            Ok(true) => Some(gen.0.dim() - 1),
            _ => None,
        }
    }

    fn generator_boundary(&self, gen: &HomGenerator) -> Option<Sphere<HomGenerator>> {
        if gen.0.dim() < 2 {
            return None;
        }
        let b = boundary(&self.0.computad, &gen.0).ok()?;
        Some(Sphere::new(factor(self.0, &b.src).ok()?, factor(self.0, &b.tgt).ok()?))
    }
}

/// Both sides of the op/hom commutation for one loop cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportVerdict {
    /// `hom_factor(op_w c)` in `op_w C`.
    pub lhs: HomCell,
    /// `op_{w-1}(hom_factor c)`, generators transported by `op_w`.
    pub rhs: HomCell,
}

impl TransportVerdict {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn diff(&self) -> Option<String> {
        (!self.holds()).then(|| format!("hom of opposite: {}\nopposite of hom: {}", self.lhs, self.rhs))
    }
}

pub fn op_hom_transport(w: &DimSet, bc: &BipointedComputad, c: &Cell) -> Result<TransportVerdict, HomError> {
    let lhs = hom_factor(&op_bipointed(w, bc), &op_cell(w, c))?;
    let h = hom_factor(bc, c)?;
    let rhs = op_cell_with(&w.minus_one(), &h, &mut |g: &HomGenerator| HomGenerator(op_cell(w, &g.0)));
    Ok(TransportVerdict { lhs, rhs })
}

/// Basepoints named by generator.
pub fn pointed(bc: &crate::computads::Computad, minus: &str, plus: &str) -> Result<BipointedComputad, crate::computads::ComputadError> {
    BipointedComputad::new(bc.clone(), Name::from(minus), Name::from(plus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::computads::free_computad;
    use crate::globular::disk;
    use crate::metaops::{suspend_cell, suspend_computad};
    use crate::oplib::{comp_cell, compose, eh_computad, identity_cell};

    fn v(s: &str, d: usize) -> Cell {
        Cell::var(Name::from(s), d)
    }

    #[test]
    fn generators_of_eh_are_indecomposable() {
        let eh = eh_computad();
        let a = v("a", 2);
        assert!(is_loop_cell(&eh, &a).unwrap());
        assert!(is_indecomposable(&eh, &a).unwrap());
        assert_eq!(hom_factor(&eh, &a).unwrap(), Cell::var(HomGenerator(a.clone()), 1));
        assert_eq!(hom_realize(&eh, &Cell::var(HomGenerator(a.clone()), 1)).unwrap(), a);
    }

    #[test]
    fn identity_of_a_point_is_indecomposable() {
        let p = pointed(&free_computad(&disk(0)), "0", "0").unwrap();
        let idx = identity_cell(&p.computad, &v("0", 0)).unwrap();
        assert!(is_indecomposable(&p, &idx).unwrap());
        let two = compose(&p.computad, &idx, 0, &idx).unwrap();
        assert!(is_indecomposable(&p, &two).unwrap());
    }

    #[test]
    fn arrow_in_a_path_is_not_a_loop() {
        let k = free_computad(Tree::comp(1, 0, 1).unwrap().scheme().carrier());
        let p = pointed(&k, "0", "2").unwrap();
        assert!(!is_loop_cell(&p, &v("1.0", 1)).unwrap());
        assert_eq!(hom_factor(&p, &v("1.0", 1)).unwrap_err().code(), "NotALoop");
    }

    #[test]
    fn vertical_composite_factors_as_a_hom_composite() {
        let eh = eh_computad();
        let c = &eh.computad;
        let (a, b) = (v("a", 2), v("b", 2));
        let ab = compose(c, &a, 1, &b).unwrap();
        assert!(!is_indecomposable(&eh, &ab).unwrap());
        let h = hom_factor(&eh, &ab).unwrap();
        let hs = HomSignature(&eh);
        let (ga, gb) = (hom_factor(&eh, &a).unwrap(), hom_factor(&eh, &b).unwrap());
        assert_eq!(compose(&hs, &ga, 0, &gb).unwrap(), h);
        assert_eq!(hom_realize(&eh, &h).unwrap(), ab);
    }

    #[test]
    fn suspended_template_is_decomposable() {
        let t = Tree::comp(1, 0, 1).unwrap();
        let s = suspend_computad(&free_computad(t.scheme().carrier()));
        let c = suspend_cell(&comp_cell(1, 0, 1).unwrap());
        assert!(is_loop_cell(&s, &c).unwrap());
        assert!(!is_indecomposable(&s, &c).unwrap());
    }
}
