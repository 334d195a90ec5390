//! Finite globular sets and the bipointed constructions on them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dimset::DimSet;
use crate::name::Name;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlobularError {
    #[error("cell `{0}` occurs more than once")]
    DuplicateCell(Name),
    #[error("cell `{0}` of positive dimension has no {1}")]
    MissingBoundary(Name, &'static str),
    #[error("boundary `{1}` of cell `{0}` is not a cell one dimension lower")]
    BoundaryDimension(Name, Name),
    #[error("cell `{0}` violates globularity")]
    NotGlobular(Name),
    #[error("boundary entry for unknown cell `{0}`")]
    UnknownCell(Name),
    #[error("basepoint `{0}` is not a 0-cell")]
    BadBasepoint(Name),
}

/// A finite globular set. Cell names are unique across all dimensions.
/// Trailing empty dimensions are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GlobularSet {
    cells: Vec<BTreeSet<Name>>,
    src: BTreeMap<Name, Name>,
    tgt: BTreeMap<Name, Name>,
}

impl GlobularSet {
    pub fn empty() -> Self {
        GlobularSet::default()
    }

    /// Validating constructor.
    pub fn new(
        cells: Vec<Vec<Name>>,
        src: BTreeMap<Name, Name>,
        tgt: BTreeMap<Name, Name>,
    ) -> Result<Self, GlobularError> {
        let mut seen = BTreeSet::new();
        let mut by_dim = Vec::with_capacity(cells.len());
        for layer in cells {
            let mut set = BTreeSet::new();
            for c in layer {
                if !seen.insert(c.clone()) {
                    return Err(GlobularError::DuplicateCell(c));
                }
                set.insert(c);
            }
            by_dim.push(set);
        }
        let g = GlobularSet::from_parts(by_dim, src, tgt);
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_parts(
        mut cells: Vec<BTreeSet<Name>>,
        src: BTreeMap<Name, Name>,
        tgt: BTreeMap<Name, Name>,
    ) -> Self {
        while cells.last().is_some_and(|l| l.is_empty()) {
            cells.pop();
        }
        GlobularSet { cells, src, tgt }
    }

    fn validate(&self) -> Result<(), GlobularError> {
        for key in self.src.keys().chain(self.tgt.keys()) {
            match self.dim_of(key) {
                Some(d) if d > 0 => {}
                _ => return Err(GlobularError::UnknownCell(key.clone())),
            }
        }
        for (d, layer) in self.cells.iter().enumerate().skip(1) {
            for x in layer {
                for (map, what) in [(&self.src, "source"), (&self.tgt, "target")] {
                    let b = map
                        .get(x)
                        .ok_or_else(|| GlobularError::MissingBoundary(x.clone(), what))?;
                    if !self.cells[d - 1].contains(b) {
                        return Err(GlobularError::BoundaryDimension(x.clone(), b.clone()));
                    }
                }
                if d >= 2 {
                    let (s, t) = (&self.src[x], &self.tgt[x]);
                    if self.src[s] != self.src[t] || self.tgt[s] != self.tgt[t] {
                        return Err(GlobularError::NotGlobular(x.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Highest nonempty dimension, `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn cells(&self, d: usize) -> impl Iterator<Item = &Name> {
        self.cells.get(d).into_iter().flatten()
    }

    pub fn layers(&self) -> &[BTreeSet<Name>] {
        &self.cells
    }

    pub fn all_cells(&self) -> impl Iterator<Item = (usize, &Name)> {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(d, l)| l.iter().map(move |c| (d, c)))
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(|l| l.len()).collect()
    }

    pub fn len(&self) -> usize {
        self.cells.iter().map(|l| l.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, x: &str) -> bool {
        self.dim_of(x).is_some()
    }

    pub fn dim_of(&self, x: &str) -> Option<usize> {
        self.cells.iter().position(|l| l.contains(x))
    }

    pub fn src(&self, x: &str) -> Option<&Name> {
        self.src.get(x)
    }

    pub fn tgt(&self, x: &str) -> Option<&Name> {
        self.tgt.get(x)
    }

    pub fn src_map(&self) -> &BTreeMap<Name, Name> {
        &self.src
    }

    pub fn tgt_map(&self) -> &BTreeMap<Name, Name> {
        &self.tgt
    }

    /// Iterated source down to dimension `k`; `x` itself if already at or below `k`.
    pub fn src_k(&self, x: &Name, k: usize) -> Option<Name> {
        let mut cur = x.clone();
        while self.dim_of(&cur)? > k {
            cur = self.src.get(&cur)?.clone();
        }
        Some(cur)
    }

    pub fn tgt_k(&self, x: &Name, k: usize) -> Option<Name> {
        let mut cur = x.clone();
        while self.dim_of(&cur)? > k {
            cur = self.tgt.get(&cur)?.clone();
        }
        Some(cur)
    }

    /// Reverse source and target of every `n`-cell with `n` in `w`.
    pub fn op(&self, w: &DimSet) -> GlobularSet {
        let mut src = self.src.clone();
        let mut tgt = self.tgt.clone();
        for n in w.iter() {
            for x in self.cells(n) {
                src.insert(x.clone(), self.tgt[x].clone());
                tgt.insert(x.clone(), self.src[x].clone());
            }
        }
        GlobularSet::from_parts(self.cells.clone(), src, tgt)
    }

    /// Rename every cell; `f` must be injective.
    pub fn rename(&self, f: impl Fn(&Name) -> Name) -> GlobularSet {
        let cells = self
            .cells
            .iter()
            .map(|l| l.iter().map(&f).collect())
            .collect();
        let map = |m: &BTreeMap<Name, Name>| m.iter().map(|(k, v)| (f(k), f(v))).collect();
        GlobularSet::from_parts(cells, map(&self.src), map(&self.tgt))
    }

    pub fn to_json(&self, base: Option<(&Name, &Name)>) -> serde_json::Value {
        let doc = GlobularJson {
            dims: self.cells.iter().map(|l| l.iter().cloned().collect()).collect(),
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            base: base.map(|(a, b)| [a.clone(), b.clone()]),
        };
        serde_json::to_value(doc).expect("globular set serializes")
    }

    /// Decodes a JSON globular set together with its optional basepoints.
    pub fn from_json(
        v: &serde_json::Value,
    ) -> Result<(GlobularSet, Option<(Name, Name)>), crate::json::JsonError> {
        let doc: GlobularJson = serde_json::from_value(v.clone())?;
        let g = GlobularSet::new(doc.dims, doc.src, doc.tgt)?;
        let base = doc.base.map(|[a, b]| (a, b));
        if let Some((a, b)) = &base {
            for x in [a, b] {
                if g.dim_of(x) != Some(0) {
                    return Err(GlobularError::BadBasepoint(x.clone()).into());
                }
            }
        }
        Ok((g, base))
    }
}

#[derive(Serialize, Deserialize)]
struct GlobularJson {
    dims: Vec<Vec<Name>>,
    src: BTreeMap<Name, Name>,
    tgt: BTreeMap<Name, Name>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<[Name; 2]>,
}

/// A globular set with two chosen 0-cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipointed {
    pub carrier: GlobularSet,
    pub base_minus: Name,
    pub base_plus: Name,
}

impl Bipointed {
    pub fn new(carrier: GlobularSet, base_minus: Name, base_plus: Name) -> Result<Self, GlobularError> {
        for b in [&base_minus, &base_plus] {
            if carrier.dim_of(b) != Some(0) {
                return Err(GlobularError::BadBasepoint(b.clone()));
            }
        }
        Ok(Bipointed { carrier, base_minus, base_plus })
    }

    /// Opposite; basepoints swap iff `1` is in `w`.
    pub fn op(&self, w: &DimSet) -> Bipointed {
        let (m, p) = if w.contains(1) {
            (self.base_plus.clone(), self.base_minus.clone())
        } else {
            (self.base_minus.clone(), self.base_plus.clone())
        };
        Bipointed { carrier: self.carrier.op(w), base_minus: m, base_plus: p }
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.carrier.to_json(Some((&self.base_minus, &self.base_plus)))
    }
}

/// The `n`-disk, built as the `n`-fold suspension of a point.
pub fn disk(n: usize) -> GlobularSet {
    let mut g = point();
    for _ in 0..n {
        g = suspend(&g).carrier;
    }
    g
}

fn point() -> GlobularSet {
    GlobularSet::from_parts(vec![BTreeSet::from([Name::from("0")])], BTreeMap::new(), BTreeMap::new())
}

/// Suspension basepoints and the prefix given to shifted cells.
pub const SUSP_MINUS: &str = "0";
pub const SUSP_PLUS: &str = "1";

pub fn suspended_name(x: &Name) -> Name {
    x.prefixed(SUSP_PLUS)
}

/// Two fresh 0-cells `0`, `1`; every cell `x` becomes `1.x` one dimension up.
pub fn suspend(x: &GlobularSet) -> Bipointed {
    let minus = Name::from(SUSP_MINUS);
    let plus = Name::from(SUSP_PLUS);
    let mut cells = vec![BTreeSet::from([minus.clone(), plus.clone()])];
    cells.extend(x.cells.iter().map(|l| l.iter().map(suspended_name).collect()));
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    for c in x.cells(0) {
        src.insert(suspended_name(c), minus.clone());
        tgt.insert(suspended_name(c), plus.clone());
    }
    for (k, v) in &x.src {
        src.insert(suspended_name(k), suspended_name(v));
    }
    for (k, v) in &x.tgt {
        tgt.insert(suspended_name(k), suspended_name(v));
    }
    Bipointed {
        carrier: GlobularSet::from_parts(cells, src, tgt),
        base_minus: minus,
        base_plus: plus,
    }
}

/// Path space: the cells running from `base_minus` to `base_plus`, shifted down
/// one dimension. Cells keep their names, so the inclusion into the carrier is
/// literally a subset.
pub fn hom(x: &Bipointed) -> GlobularSet {
    let g = &x.carrier;
    let mut cells = Vec::new();
    for d in 1..g.cells.len() {
        let layer: BTreeSet<Name> = g
            .cells(d)
            .filter(|c| {
                g.src_k(c, 0).as_ref() == Some(&x.base_minus)
                    && g.tgt_k(c, 0).as_ref() == Some(&x.base_plus)
            })
            .cloned()
            .collect();
        cells.push(layer);
    }
    let keep: BTreeSet<Name> = cells.iter().skip(1).flatten().cloned().collect();
    let restrict = |m: &BTreeMap<Name, Name>| {
        m.iter()
            .filter(|(k, _)| keep.contains(*k))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    };
    GlobularSet::from_parts(cells, restrict(&g.src), restrict(&g.tgt))
}

/// Undo the `1.` prefix added by [`suspend`].
pub fn strip_suspension(g: &GlobularSet) -> Option<GlobularSet> {
    let prefix = format!("{SUSP_PLUS}.");
    if g.all_cells().any(|(_, c)| !c.as_str().starts_with(&prefix)) {
        return None;
    }
    Some(g.rename(|c| Name::from(&c.as_str()[prefix.len()..])))
}

/// Wedge sum. Chain 0-cells get integer names `0..n`; every other cell `c` of
/// part `i` (1-based) becomes `i.c`.
pub fn wedge(parts: &[Bipointed]) -> Bipointed {
    let n = parts.len();
    // chain index j joins part j's base_plus and part j+1's base_minus;
    // a part with equal basepoints merges its two chain indices
    let mut class: Vec<usize> = Vec::with_capacity(n + 1);
    class.push(0);
    for p in parts {
        let prev = *class.last().unwrap();
        class.push(if p.base_minus == p.base_plus { prev } else { prev + 1 });
    }
    let chain = |j: usize| Name::new(class[j].to_string());

    let mut cells: Vec<BTreeSet<Name>> = vec![(0..=n).map(chain).collect()];
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    for (idx, p) in parts.iter().enumerate() {
        let i = idx + 1;
        let rename = |c: &Name| {
            if *c == p.base_minus {
                chain(idx)
            } else if *c == p.base_plus {
                chain(i)
            } else {
                c.prefixed(i)
            }
        };
        for (d, c) in p.carrier.all_cells() {
            if cells.len() <= d {
                cells.resize(d + 1, BTreeSet::new());
            }
            cells[d].insert(rename(c));
        }
        for (k, v) in &p.carrier.src {
            src.insert(rename(k), rename(v));
        }
        for (k, v) in &p.carrier.tgt {
            tgt.insert(rename(k), rename(v));
        }
    }
    Bipointed {
        carrier: GlobularSet::from_parts(cells, src, tgt),
        base_minus: chain(0),
        base_plus: chain(n),
    }
}

/// Whether `f` is a morphism of globular sets from `a` to `b`.
pub fn is_morphism(f: &BTreeMap<Name, Name>, a: &GlobularSet, b: &GlobularSet) -> bool {
    a.all_cells().all(|(d, x)| {
        let Some(fx) = f.get(x) else { return false };
        if b.dim_of(fx) != Some(d) {
            return false;
        }
        d == 0
            || (f.get(&a.src[x]) == b.src.get(fx) && f.get(&a.tgt[x]) == b.tgt.get(fx))
    })
}

/// Searches for an isomorphism `a -> b` extending `fixed`. Backtracking,
/// dimension by dimension; intended for small sets.
pub fn find_isomorphism(
    a: &GlobularSet,
    b: &GlobularSet,
    fixed: &[(Name, Name)],
) -> Option<BTreeMap<Name, Name>> {
    if a.cell_counts() != b.cell_counts() {
        return None;
    }
    let order: Vec<(usize, Name)> = a.all_cells().map(|(d, c)| (d, c.clone())).collect();
    let mut map: BTreeMap<Name, Name> = BTreeMap::new();
    let mut used: BTreeSet<Name> = BTreeSet::new();
    for (x, y) in fixed {
        if a.dim_of(x).is_none() || a.dim_of(x) != b.dim_of(y) {
            return None;
        }
        if map.get(x).is_some_and(|z| z != y) || (!map.contains_key(x) && used.contains(y)) {
            return None;
        }
        map.insert(x.clone(), y.clone());
        used.insert(y.clone());
    }

    fn go(
        i: usize,
        order: &[(usize, Name)],
        a: &GlobularSet,
        b: &GlobularSet,
        map: &mut BTreeMap<Name, Name>,
        used: &mut BTreeSet<Name>,
    ) -> bool {
        let Some((d, x)) = order.get(i) else { return true };
        let fits = |y: &Name, map: &BTreeMap<Name, Name>| {
            *d == 0 || (map.get(&a.src[x]) == b.src.get(y) && map.get(&a.tgt[x]) == b.tgt.get(y))
        };
        if let Some(y) = map.get(x).cloned() {
            return fits(&y, map) && go(i + 1, order, a, b, map, used);
        }
        let candidates: Vec<Name> = b.cells(*d).filter(|y| !used.contains(*y)).cloned().collect();
        for y in candidates {
            if !fits(&y, map) {
                continue;
            }
            map.insert(x.clone(), y.clone());
            used.insert(y.clone());
            if go(i + 1, order, a, b, map, used) {
                return true;
            }
            map.remove(x);
            used.remove(&y);
        }
        false
    }

    go(0, &order, a, b, &mut map, &mut used).then_some(map)
}

/// Isomorphism of bipointed sets, preserving both basepoints.
pub fn find_bipointed_isomorphism(a: &Bipointed, b: &Bipointed) -> Option<BTreeMap<Name, Name>> {
    find_isomorphism(
        &a.carrier,
        &b.carrier,
        &[
            (a.base_minus.clone(), b.base_minus.clone()),
            (a.base_plus.clone(), b.base_plus.clone()),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Name {
        Name::from(s)
    }

    fn arrow() -> GlobularSet {
        disk(1)
    }

    #[test]
    fn disk_counts() {
        assert_eq!(disk(0).cell_counts(), vec![1]);
        assert_eq!(disk(2).cell_counts(), vec![2, 2, 1]);
        assert_eq!(disk(4).cell_counts(), vec![2, 2, 2, 2, 1]);
    }

    #[test]
    fn disk_one_is_an_arrow() {
        let d = arrow();
        assert_eq!(d.src(&n("1.0")), Some(&n("0")));
        assert_eq!(d.tgt(&n("1.0")), Some(&n("1")));
    }

    #[test]
    fn empty_wedge_is_a_doubly_pointed_point() {
        let w = wedge(&[]);
        assert_eq!(w.carrier, disk(0));
        assert_eq!(w.base_minus, w.base_plus);
    }

    #[test]
    fn wedge_of_two_arrows_is_a_path() {
        let a = suspend(&disk(0));
        let w = wedge(&[a.clone(), a]);
        assert_eq!(w.carrier.cell_counts(), vec![3, 2]);
        assert_eq!(w.carrier.src(&n("1.1.0")), Some(&n("0")));
        assert_eq!(w.carrier.tgt(&n("1.1.0")), Some(&n("1")));
        assert_eq!(w.carrier.src(&n("2.1.0")), Some(&n("1")));
        assert_eq!(w.carrier.tgt(&n("2.1.0")), Some(&n("2")));
        assert_eq!((w.base_minus, w.base_plus), (n("0"), n("2")));
    }

    #[test]
    fn wedge_of_one_part_is_isomorphic_to_it() {
        let x = suspend(&disk(2));
        let w = wedge(std::slice::from_ref(&x));
        assert!(find_bipointed_isomorphism(&w, &x).is_some());
    }

    #[test]
    fn wedge_absorbs_unit_parts() {
        let unit = wedge(&[]);
        let x = suspend(&disk(1));
        let w = wedge(&[unit.clone(), x.clone(), unit]);
        assert!(find_bipointed_isomorphism(&w, &x).is_some());
    }

    #[test]
    fn suspension_of_empty_and_point() {
        let e = suspend(&GlobularSet::empty());
        assert_eq!(e.carrier.cell_counts(), vec![2]);
        let p = suspend(&disk(0));
        assert_eq!(p.carrier, disk(1));
    }

    #[test]
    fn hom_of_suspension_recovers_the_set() {
        for k in 0..4 {
            let x = disk(k);
            let h = hom(&suspend(&x));
            assert_eq!(strip_suspension(&h), Some(x));
        }
    }

    #[test]
    fn hom_of_arrow() {
        let fwd = Bipointed::new(arrow(), n("0"), n("1")).unwrap();
        assert_eq!(hom(&fwd).cell_counts(), vec![1]);
        let back = Bipointed::new(arrow(), n("1"), n("0")).unwrap();
        assert!(hom(&back).is_empty());
    }

    #[test]
    fn op_reverses_an_arrow() {
        let d = arrow().op(&DimSet::of(&[1]));
        assert_eq!(d.src(&n("1.0")), Some(&n("1")));
        assert_eq!(d.tgt(&n("1.0")), Some(&n("0")));
        assert_eq!(arrow().op(&DimSet::empty()), arrow());
    }

    #[test]
    fn validation_rejects_non_globular() {
        // two parallel arrows f,g : x -> y and a 2-cell a : f -> h where h : y -> x
        let cells = vec![vec![n("x"), n("y")], vec![n("f"), n("h")], vec![n("a")]];
        let src = BTreeMap::from([(n("f"), n("x")), (n("h"), n("y")), (n("a"), n("f"))]);
        let tgt = BTreeMap::from([(n("f"), n("y")), (n("h"), n("x")), (n("a"), n("h"))]);
        assert_eq!(
            GlobularSet::new(cells, src, tgt),
            Err(GlobularError::NotGlobular(n("a")))
        );
    }

    #[test]
    fn validation_rejects_duplicates_and_missing_boundaries() {
        let dup = GlobularSet::new(vec![vec![n("x")], vec![n("x")]], BTreeMap::new(), BTreeMap::new());
        assert_eq!(dup, Err(GlobularError::DuplicateCell(n("x"))));
        let missing = GlobularSet::new(vec![vec![n("x")], vec![n("f")]], BTreeMap::new(), BTreeMap::new());
        assert!(matches!(missing, Err(GlobularError::MissingBoundary(..))));
    }

    #[test]
    fn json_round_trip() {
        let x = suspend(&disk(1));
        let v = x.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"dims":[["0","1"],["1.0","1.1"],["1.1.0"]],"src":{"1.0":"0","1.1":"0","1.1.0":"1.0"},"tgt":{"1.0":"1","1.1":"1","1.1.0":"1.1"},"base":["0","1"]}"#
        );
        let (g, base) = GlobularSet::from_json(&v).unwrap();
        assert_eq!(g, x.carrier);
        assert_eq!(base, Some((n("0"), n("1"))));
    }

    #[test]
    fn isomorphism_search_respects_basepoints() {
        let a = Bipointed::new(arrow(), n("0"), n("1")).unwrap();
        let b = Bipointed::new(arrow(), n("1"), n("0")).unwrap();
        assert!(find_bipointed_isomorphism(&a, &a).is_some());
        assert!(find_bipointed_isomorphism(&a, &b).is_none());
        assert!(find_bipointed_isomorphism(&a.op(&DimSet::of(&[1])), &a).is_some());
    }
}
