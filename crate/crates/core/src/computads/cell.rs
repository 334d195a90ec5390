//! Cell terms, spheres and substitutions.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::name::Name;
use crate::trees::{Position, Tree};

/// What can sit at a `Var` leaf: generator names, or richer labels such as
/// whole cells (double cells) or hom generators.
pub trait Leaf: Clone + Ord + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Whether this leaf is the generator named by position `p` of a free
    /// pasting computad. Used to print identity substitutions as `[]`.
    fn is_position(&self, _p: &Name) -> bool {
        false
    }
}

impl Leaf for Name {
    fn is_position(&self, p: &Name) -> bool {
        self == p
    }
}

/// A cell: a generator or a coherence `coh{B}{A}{τ}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Cell<V = Name> {
    Var { gen: V, dim: usize },
    Coh(Arc<Coherence<V>>),
}

/// `coh{tree}{sphere}{sub}`. The sphere lives over the free computad on the
/// positions of `tree`; `sub` assigns a cell to every position.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Coherence<V = Name> {
    pub tree: Tree,
    pub sphere: Sphere<Name>,
    pub sub: Substitution<V>,
}

/// A pair of cells of equal dimension; parallel when well formed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sphere<V = Name> {
    pub src: Cell<V>,
    pub tgt: Cell<V>,
}

/// Generator- or position-keyed assignment of cells. Doubles as the
/// representation of computad morphisms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Substitution<V = Name>(BTreeMap<Name, Cell<V>>);

impl<V: Leaf> Cell<V> {
    pub fn var(gen: V, dim: usize) -> Self {
        Cell::Var { gen, dim }
    }

    pub fn coh(tree: Tree, sphere: Sphere<Name>, sub: Substitution<V>) -> Self {
        Cell::Coh(Arc::new(Coherence { tree, sphere, sub }))
    }

    pub fn dim(&self) -> usize {
        match self {
            Cell::Var { dim, .. } => *dim,
            Cell::Coh(c) => c.sphere.dim() + 1,
        }
    }

    pub fn as_var(&self) -> Option<&V> {
        match self {
            Cell::Var { gen, .. } => Some(gen),
            Cell::Coh(_) => None,
        }
    }

    pub fn as_coh(&self) -> Option<&Coherence<V>> {
        match self {
            Cell::Var { .. } => None,
            Cell::Coh(c) => Some(c),
        }
    }

    /// Number of constructors in the term, spheres excluded.
    pub fn size(&self) -> usize {
        match self {
            Cell::Var { .. } => 1,
            Cell::Coh(c) => 1 + c.sub.iter().map(|(_, x)| x.size()).sum::<usize>(),
        }
    }

    /// Replace every leaf by a cell. `Coh` nodes keep tree and sphere and
    /// recurse into the substitution.
    pub fn bind<W: Leaf, E>(
        &self,
        f: &mut impl FnMut(&V, usize) -> Result<Cell<W>, E>,
    ) -> Result<Cell<W>, E> {
        match self {
            Cell::Var { gen, dim } => f(gen, *dim),
            Cell::Coh(c) => Ok(Cell::coh(c.tree.clone(), c.sphere.clone(), c.sub.bind(f)?)),
        }
    }

    /// Relabel leaves without changing dimensions.
    pub fn map_leaves<W: Leaf>(&self, f: &mut impl FnMut(&V) -> W) -> Cell<W> {
        let r: Result<Cell<W>, std::convert::Infallible> =
            self.bind(&mut |v, d| Ok(Cell::var(f(v), d)));
        match r {
            Ok(c) => c,
            Err(e) => match e {},
        }
    }

    /// All leaves, with repetition, in traversal order.
    pub fn leaves(&self) -> Vec<(&V, usize)> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<(&'a V, usize)>) {
        match self {
            Cell::Var { gen, dim } => out.push((gen, *dim)),
            Cell::Coh(c) => {
                for (_, x) in c.sub.iter() {
                    x.collect_leaves(out);
                }
            }
        }
    }
}

impl Cell<Name> {
    /// `free(f)`: rename generators along a position map.
    pub fn rename_positions(&self, map: &BTreeMap<Position, Position>) -> Cell<Name> {
        self.map_leaves(&mut |v| {
            let p = Position::parse(v).expect("position name");
            map.get(&p).expect("position in domain").name()
        })
    }
}

impl<V: Leaf> Sphere<V> {
    pub fn new(src: Cell<V>, tgt: Cell<V>) -> Self {
        Sphere { src, tgt }
    }

    pub fn dim(&self) -> usize {
        self.src.dim()
    }

    pub fn bind<W: Leaf, E>(
        &self,
        f: &mut impl FnMut(&V, usize) -> Result<Cell<W>, E>,
    ) -> Result<Sphere<W>, E> {
        Ok(Sphere::new(self.src.bind(f)?, self.tgt.bind(f)?))
    }

    pub fn map_leaves<W: Leaf>(&self, f: &mut impl FnMut(&V) -> W) -> Sphere<W> {
        Sphere::new(self.src.map_leaves(f), self.tgt.map_leaves(f))
    }

    pub fn swapped(&self) -> Sphere<V> {
        Sphere::new(self.tgt.clone(), self.src.clone())
    }
}

impl<V: Leaf> Substitution<V> {
    pub fn new(map: BTreeMap<Name, Cell<V>>) -> Self {
        Substitution(map)
    }

    pub fn get(&self, key: &str) -> Option<&Cell<V>> {
        self.0.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Cell<V>)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Name> {
        self.0.keys()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, key: Name, cell: Cell<V>) -> Option<Cell<V>> {
        self.0.insert(key, cell)
    }

    pub fn as_map(&self) -> &BTreeMap<Name, Cell<V>> {
        &self.0
    }

    pub fn bind<W: Leaf, E>(
        &self,
        f: &mut impl FnMut(&V, usize) -> Result<Cell<W>, E>,
    ) -> Result<Substitution<W>, E> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.0 {
            out.insert(k.clone(), c.bind(f)?);
        }
        Ok(Substitution(out))
    }

    pub fn map_leaves<W: Leaf>(&self, f: &mut impl FnMut(&V) -> W) -> Substitution<W> {
        Substitution(self.0.iter().map(|(k, c)| (k.clone(), c.map_leaves(f))).collect())
    }

    /// Whether this is `p ↦ var p` on every key.
    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|(k, c)| matches!(c, Cell::Var { gen, .. } if gen.is_position(k)))
    }
}

impl Substitution<Name> {
    /// The identity substitution on the positions of `tree`.
    pub fn identity(tree: &Tree) -> Self {
        Substitution(
            tree.positions()
                .into_iter()
                .map(|p| (p.name(), Cell::var(p.name(), p.dim())))
                .collect(),
        )
    }
}

impl<V: Leaf> FromIterator<(Name, Cell<V>)> for Substitution<V> {
    fn from_iter<I: IntoIterator<Item = (Name, Cell<V>)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

impl<V: Leaf> fmt::Display for Cell<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Var { gen, .. } => write!(f, "{gen}"),
            Cell::Coh(c) => {
                write!(f, "coh {} {{{} -> {}}} [", c.tree, c.sphere.src, c.sphere.tgt)?;
                if !c.sub.is_identity() {
                    for (i, (k, x)) in c.sub.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{k} => {x}")?;
                    }
                }
                f.write_str("]")
            }
        }
    }
}

impl<V: Leaf> fmt::Display for Sphere<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.src, self.tgt)
    }
}

/// A cell used as a leaf: the generators of the free computad on the cells
/// of a computad.
impl Leaf for Cell<Name> {}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str, d: usize) -> Cell {
        Cell::var(Name::from(s), d)
    }

    #[test]
    fn identity_substitution_prints_empty() {
        let t: Tree = "[[],[]]".parse().unwrap();
        let c = Cell::coh(t.clone(), Sphere::new(v("0", 0), v("2", 0)), Substitution::identity(&t));
        assert_eq!(c.to_string(), "coh [[],[]] {0 -> 2} []");
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn bind_replaces_leaves() {
        let t: Tree = "[[],[]]".parse().unwrap();
        let c = Cell::coh(t.clone(), Sphere::new(v("0", 0), v("2", 0)), Substitution::identity(&t));
        let d = c.map_leaves(&mut |n: &Name| Name::new(format!("g{n}")));
        let coh = d.as_coh().unwrap();
        assert_eq!(coh.sub.get("1.0"), Some(&v("g1.0", 1)));
        // the sphere is over positions and is left alone
        assert_eq!(coh.sphere.src, v("0", 0));
        assert_eq!(d.size(), 6);
        assert_eq!(c.leaves().len(), 5);
    }
}
