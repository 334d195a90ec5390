//! Finite computads and the free functor on globular sets.

use std::collections::BTreeMap;

use thiserror::Error;

use super::cell::{Cell, Sphere, Substitution};
use super::check::{self, Signature, TypeError};
use crate::globular::GlobularSet;
use crate::name::Name;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComputadError {
    #[error("generator `{0}` is declared twice")]
    Duplicate(Name),
    #[error("attaching sphere of `{name}`: {error}")]
    BadAttachment { name: Name, error: TypeError },
    #[error("`{0}` is not a 0-generator")]
    BadBasepoint(Name),
}

impl ComputadError {
    pub fn code(&self) -> &'static str {
        match self {
            ComputadError::Duplicate(_) => "DuplicateGenerator",
            ComputadError::BadAttachment { error, .. } => error.code(),
            ComputadError::BadBasepoint(_) => "BadBasepoint",
        }
    }
}

/// A finite computad: generators by dimension, each positive-dimensional
/// generator attached to a sphere of lower-dimensional cells. Generator names
/// are unique across all dimensions.
#[derive(Debug, Clone, Default)]
pub struct Computad {
    by_dim: Vec<BTreeMap<Name, Option<Sphere>>>,
    dims: BTreeMap<Name, usize>,
}

impl PartialEq for Computad {
    fn eq(&self, other: &Self) -> bool {
        self.by_dim == other.by_dim
    }
}

impl Eq for Computad {}

impl Computad {
    pub fn new() -> Self {
        Computad::default()
    }

    /// Add a generator, checking its attaching sphere against the generators
    /// already present.
    pub fn add_generator(&mut self, name: Name, sphere: Option<Sphere>) -> Result<(), ComputadError> {
        if self.dims.contains_key(&name) {
            return Err(ComputadError::Duplicate(name));
        }
        if let Some(s) = &sphere {
            check::check_sphere(self, s)
                .map_err(|error| ComputadError::BadAttachment { name: name.clone(), error })?;
        }
        self.insert_unchecked(name, sphere);
        Ok(())
    }

    pub fn with_generator(mut self, name: &str, sphere: Option<Sphere>) -> Result<Self, ComputadError> {
        self.add_generator(Name::from(name), sphere)?;
        Ok(self)
    }

    pub(crate) fn insert_unchecked(&mut self, name: Name, sphere: Option<Sphere>) {
        let d = sphere.as_ref().map_or(0, |s| s.dim() + 1);
        if self.by_dim.len() <= d {
            self.by_dim.resize(d + 1, BTreeMap::new());
        }
        self.by_dim[d].insert(name.clone(), sphere);
        self.dims.insert(name, d);
    }

    /// Rebuild generator by generator, rechecking every attachment.
    pub fn checked(&self) -> Result<Computad, ComputadError> {
        let mut out = Computad::new();
        for (name, _, s) in self.generators() {
            out.add_generator(name.clone(), s.cloned())?;
        }
        Ok(out)
    }

    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.dims.contains_key(name)
    }

    pub fn dim_of(&self, name: &str) -> Option<usize> {
        self.dims.get(name).copied()
    }

    pub fn attachment(&self, name: &str) -> Option<&Sphere> {
        let d = *self.dims.get(name)?;
        self.by_dim[d].get(name)?.as_ref()
    }

    /// `(name, dim, attachment)` by dimension, then name.
    pub fn generators(&self) -> impl Iterator<Item = (&Name, usize, Option<&Sphere>)> {
        self.by_dim
            .iter()
            .enumerate()
            .flat_map(|(d, m)| m.iter().map(move |(n, s)| (n, d, s.as_ref())))
    }

    pub fn generators_of_dim(&self, d: usize) -> impl Iterator<Item = &Name> {
        self.by_dim.get(d).into_iter().flat_map(|m| m.keys())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(|m| m.len()).collect()
    }

    pub fn var(&self, name: &str) -> Option<Cell> {
        self.dim_of(name).map(|d| Cell::var(Name::from(name), d))
    }

    /// Apply `f` to every attaching sphere.
    pub fn map_attachments(&self, mut f: impl FnMut(&Name, &Sphere) -> Sphere) -> Computad {
        let mut out = Computad::new();
        for (name, _, s) in self.generators() {
            out.insert_unchecked(name.clone(), s.map(|s| f(name, s)));
        }
        out
    }

    /// Rename generators; `f` must be injective. Attachments are renamed too.
    pub fn rename(&self, f: &impl Fn(&Name) -> Name) -> Computad {
        let mut out = Computad::new();
        for (name, _, s) in self.generators() {
            out.insert_unchecked(f(name), s.map(|s| s.map_leaves(&mut |v| f(v))));
        }
        out
    }
}

impl Signature<Name> for Computad {
    fn generator_dim(&self, gen: &Name) -> Option<usize> {
        self.dim_of(gen)
    }

    fn generator_boundary(&self, gen: &Name) -> Option<Sphere> {
        self.attachment(gen).cloned()
    }
}

/// A computad with two chosen 0-generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipointedComputad {
    pub computad: Computad,
    pub base_minus: Name,
    pub base_plus: Name,
}

impl BipointedComputad {
    pub fn new(computad: Computad, base_minus: Name, base_plus: Name) -> Result<Self, ComputadError> {
        for b in [&base_minus, &base_plus] {
            if computad.dim_of(b) != Some(0) {
                return Err(ComputadError::BadBasepoint(b.clone()));
            }
        }
        Ok(BipointedComputad { computad, base_minus, base_plus })
    }

    pub fn base_minus_cell(&self) -> Cell {
        Cell::var(self.base_minus.clone(), 0)
    }

    pub fn base_plus_cell(&self) -> Cell {
        Cell::var(self.base_plus.clone(), 0)
    }
}

/// `free(X)`: one generator per cell, attached along source and target.
pub fn free_computad(x: &GlobularSet) -> Computad {
    let mut c = Computad::new();
    for (d, cell) in x.all_cells() {
        let sphere = (d > 0).then(|| {
            let s = x.src(cell).expect("total source");
            let t = x.tgt(cell).expect("total target");
            Sphere::new(Cell::var(s.clone(), d - 1), Cell::var(t.clone(), d - 1))
        });
        c.insert_unchecked(cell.clone(), sphere);
    }
    c
}

/// A cell of the free computad on the cells of a computad.
pub type DoubleCell = Cell<Cell>;

/// Signature of the free computad on the cells of `S`: a generator is a cell,
/// attached along its own boundary.
#[derive(Debug, Clone, Copy)]
pub struct FreeOnCells<'a, S: ?Sized>(pub &'a S);

impl<S: Signature<Name> + ?Sized> Signature<Cell> for FreeOnCells<'_, S> {
    fn generator_dim(&self, gen: &Cell) -> Option<usize> {
        check::typecheck(self.0, gen).ok()
    }

    fn generator_boundary(&self, gen: &Cell) -> Option<Sphere<Cell>> {
        if gen.dim() == 0 {
            return None;
        }
        let b = check::boundary(self.0, gen).ok()?;
        let (s, t) = (b.src, b.tgt);
        let (ds, dt) = (s.dim(), t.dim());
        Some(Sphere::new(Cell::var(s, ds), Cell::var(t, dt)))
    }
}

/// The counit: evaluate a double cell by replacing each generator, itself a
/// cell, with that cell.
pub fn counit_eval(c: &DoubleCell) -> Cell {
    let r: Result<Cell, std::convert::Infallible> = c.bind(&mut |u, _| Ok(u.clone()));
    match r {
        Ok(x) => x,
        Err(e) => match e {},
    }
}

/// The unit: a cell viewed as a generator of the free computad on cells.
pub fn unit(c: &Cell) -> DoubleCell {
    Cell::var(c.clone(), c.dim())
}

/// Apply a generator-keyed morphism to a cell.
pub fn apply_morphism(sigma: &Substitution, c: &Cell) -> Result<Cell, MorphismError> {
    c.bind(&mut |v, _| sigma.get(v).cloned().ok_or_else(|| MorphismError::Missing(v.clone())))
}

pub fn apply_morphism_sphere(sigma: &Substitution, s: &Sphere) -> Result<Sphere, MorphismError> {
    Ok(Sphere::new(apply_morphism(sigma, &s.src)?, apply_morphism(sigma, &s.tgt)?))
}

/// `σ ∘ τ` as a substitution keyed like `τ`.
pub fn compose_morphisms(sigma: &Substitution, tau: &Substitution) -> Result<Substitution, MorphismError> {
    tau.iter()
        .map(|(k, c)| Ok((k.clone(), apply_morphism(sigma, c)?)))
        .collect()
}

pub fn identity_morphism(c: &Computad) -> Substitution {
    c.generators()
        .map(|(n, d, _)| (n.clone(), Cell::var(n.clone(), d)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("morphism has no binding for generator `{0}`")]
    Missing(Name),
    #[error("morphism is not boundary-compatible at `{name}`: {detail}")]
    Incompatible { name: Name, detail: String },
}

/// Check that `sigma` is a morphism from `source` to `target`.
pub fn check_morphism(source: &Computad, target: &Computad, sigma: &Substitution) -> Result<(), MorphismError> {
    for (name, d, attach) in source.generators() {
        let image = sigma.get(name).ok_or_else(|| MorphismError::Missing(name.clone()))?;
        let bad = |detail: String| MorphismError::Incompatible { name: name.clone(), detail };
        let got = check::typecheck(target, image).map_err(|e| bad(e.to_string()))?;
        if got != d {
            return Err(bad(format!("image has dimension {got}, expected {d}")));
        }
        if let Some(a) = attach {
            let want = apply_morphism_sphere(sigma, a)?;
            let have = check::boundary(target, image).map_err(|e| bad(e.to_string()))?;
            if want != have {
                return Err(bad("image boundary differs from the image of the attachment".into()));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::globular::disk;
    use crate::trees::Tree;

    fn v(s: &str, d: usize) -> Cell {
        Cell::var(Name::from(s), d)
    }

    #[test]
    fn free_on_disks() {
        assert_eq!(free_computad(&disk(0)).counts(), vec![1]);
        let c = free_computad(&disk(2));
        assert_eq!(c.counts(), vec![2, 2, 1]);
        assert_eq!(c.attachment("1.1.0"), Some(&Sphere::new(v("1.0", 1), v("1.1", 1))));
    }

    #[test]
    fn free_on_the_two_arrow_scheme() {
        let s = Tree::comp(1, 0, 1).unwrap().scheme();
        let c = free_computad(s.carrier());
        assert_eq!(c.counts(), vec![3, 2]);
        assert_eq!(c.attachment("1.0"), Some(&Sphere::new(v("0", 0), v("1", 0))));
        assert_eq!(check::support(&c, &v("1.0", 1)).unwrap().len(), 3);
    }

    #[test]
    fn add_generator_rejects_duplicates_and_bad_spheres() {
        let c = Computad::new().with_generator("x", None).unwrap();
        assert_eq!(
            c.clone().with_generator("x", None),
            Err(ComputadError::Duplicate(Name::from("x")))
        );
        let err = c
            .clone()
            .with_generator("f", Some(Sphere::new(v("x", 0), v("y", 0))))
            .unwrap_err();
        assert_eq!(err.code(), "UnknownGenerator");
        let c = c
            .with_generator("y", None)
            .unwrap()
            .with_generator("f", Some(Sphere::new(v("x", 0), v("y", 0))))
            .unwrap()
            .with_generator("g", Some(Sphere::new(v("y", 0), v("x", 0))))
            .unwrap();
        let err = c.with_generator("a", Some(Sphere::new(v("f", 1), v("g", 1)))).unwrap_err();
        assert_eq!(err.code(), "NotParallel");
    }

    #[test]
    fn counit_of_unit_is_identity() {
        let c = v("x", 0);
        assert_eq!(counit_eval(&unit(&c)), c);
    }

    #[test]
    fn free_on_cells_signature() {
        let k = free_computad(&disk(1));
        let f = v("1.0", 1);
        let sig = FreeOnCells(&k);
        assert_eq!(sig.generator_dim(&f), Some(1));
        assert_eq!(
            sig.generator_boundary(&f),
            Some(Sphere::new(unit(&v("0", 0)), unit(&v("1", 0))))
        );
        assert_eq!(sig.generator_dim(&v("nope", 0)), None);
    }

    #[test]
    fn morphism_checks() {
        let src = free_computad(&disk(1));
        let tgt = free_computad(&disk(1));
        let id = identity_morphism(&src);
        assert_eq!(check_morphism(&src, &tgt, &id), Ok(()));
        let mut bad = id.clone();
        bad.insert(Name::from("0"), v("1", 0));
        assert!(matches!(
            check_morphism(&src, &tgt, &bad),
            Err(MorphismError::Incompatible { .. })
        ));
        assert_eq!(
            apply_morphism(&Substitution::new(Default::default()), &v("0", 0)),
            Err(MorphismError::Missing(Name::from("0")))
        );
    }
}
