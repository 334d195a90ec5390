//! Batanin trees, positions and pasting schemes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use crate::dimset::DimSet;
use crate::globular::{Bipointed, GlobularSet};
use crate::name::Name;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("no composite of shape ({n},{k},{m}): need 1 <= n, 1 <= m and k < min(n, m)")]
    InvalidComposite { n: usize, k: usize, m: usize },
    #[error("tree literal, column {col}: {msg}")]
    Syntax { col: usize, msg: String },
}

/// A finite planar rooted tree, `br[B1, ..., Bn]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Tree {
    children: Vec<Tree>,
}

impl Tree {
    pub fn leaf() -> Tree {
        Tree { children: Vec::new() }
    }

    pub fn new(children: Vec<Tree>) -> Tree {
        Tree { children }
    }

    pub fn children(&self) -> &[Tree] {
        &self.children
    }

    pub fn arity(&self) -> usize {
        self.children.len()
    }

    pub fn dim(&self) -> usize {
        self.children.iter().map(|c| c.dim() + 1).max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Tree::node_count).sum::<usize>()
    }

    /// `∂_0 B = br[]`, `∂_{k+1} br[B1..Bn] = br[∂_k B1 .. ∂_k Bn]`.
    pub fn boundary(&self, k: usize) -> Tree {
        if k == 0 {
            Tree::leaf()
        } else {
            Tree::new(self.children.iter().map(|c| c.boundary(k - 1)).collect())
        }
    }

    pub fn suspend(&self) -> Tree {
        Tree::new(vec![self.clone()])
    }

    pub fn disk(k: usize) -> Tree {
        (0..k).fold(Tree::leaf(), |t, _| t.suspend())
    }

    /// Arity of the `k`-composite of an `n`-cell with an `m`-cell.
    pub fn comp(n: usize, k: usize, m: usize) -> Result<Tree, TreeError> {
        if n == 0 || m == 0 || k >= n.min(m) {
            return Err(TreeError::InvalidComposite { n, k, m });
        }
        Ok(if k == 0 {
            Tree::new(vec![Tree::disk(n - 1), Tree::disk(m - 1)])
        } else {
            Tree::comp(n - 1, k - 1, m - 1)?.suspend()
        })
    }

    /// `op_w br[B1..Bn] = br(swap[op_{w-1} B1 .. op_{w-1} Bn])`, the swap
    /// reversing the list when `1` is in `w`.
    pub fn op(&self, w: &DimSet) -> Tree {
        if w.is_empty() {
            return self.clone();
        }
        let w1 = w.minus_one();
        let mut children: Vec<Tree> = self.children.iter().map(|c| c.op(&w1)).collect();
        if w.contains(1) {
            children.reverse();
        }
        Tree::new(children)
    }

    /// All positions, by dimension and then path.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        self.collect_positions(&mut Vec::new(), &mut out);
        out.sort_by(|a, b| (a.dim(), &a.0).cmp(&(b.dim(), &b.0)));
        out
    }

    fn collect_positions(&self, prefix: &mut Vec<usize>, out: &mut Vec<Position>) {
        for j in 0..=self.arity() {
            let mut p = prefix.clone();
            p.push(j);
            out.push(Position(p));
        }
        for (i, c) in self.children.iter().enumerate() {
            prefix.push(i + 1);
            c.collect_positions(prefix, out);
            prefix.pop();
        }
    }

    pub fn contains_position(&self, p: &Position) -> bool {
        let mut t = self;
        let (last, branches) = p.0.split_last().expect("positions are nonempty");
        for &i in branches {
            match i.checked_sub(1).and_then(|i| t.children.get(i)) {
                Some(c) => t = c,
                None => return false,
            }
        }
        *last <= t.arity()
    }

    pub fn scheme(&self) -> PastingScheme {
        PastingScheme::new(self.clone())
    }

    /// Every tree with between 1 and `max_nodes` nodes.
    pub fn enumerate(max_nodes: usize) -> Vec<Tree> {
        let mut by_size: Vec<Vec<Tree>> = vec![Vec::new()];
        // forests[m] = all ordered forests with m nodes in total
        let mut forests: Vec<Vec<Vec<Tree>>> = vec![vec![Vec::new()]];
        for n in 1..=max_nodes {
            let trees: Vec<Tree> = forests[n - 1].iter().cloned().map(Tree::new).collect();
            by_size.push(trees);
            let mut fs = Vec::new();
            for first in 1..=n {
                for t in &by_size[first] {
                    for rest in &forests[n - first] {
                        let mut f = vec![t.clone()];
                        f.extend(rest.iter().cloned());
                        fs.push(f);
                    }
                }
            }
            forests.push(fs);
        }
        by_size.into_iter().flatten().collect()
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Tree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let t = parse_tree(&chars, &mut pos)?;
        skip_ws(&chars, &mut pos);
        if pos != chars.len() {
            return Err(TreeError::Syntax { col: pos + 1, msg: "trailing input".into() });
        }
        Ok(t)
    }
}

fn skip_ws(cs: &[char], pos: &mut usize) {
    while cs.get(*pos).is_some_and(|c| c.is_whitespace()) {
        *pos += 1;
    }
}

fn expect(cs: &[char], pos: &mut usize, want: char) -> Result<(), TreeError> {
    skip_ws(cs, pos);
    if cs.get(*pos) == Some(&want) {
        *pos += 1;
        Ok(())
    } else {
        Err(TreeError::Syntax { col: *pos + 1, msg: format!("expected `{want}`") })
    }
}

fn parse_tree(cs: &[char], pos: &mut usize) -> Result<Tree, TreeError> {
    expect(cs, pos, '[')?;
    let mut children = Vec::new();
    skip_ws(cs, pos);
    if cs.get(*pos) == Some(&']') {
        *pos += 1;
        return Ok(Tree::leaf());
    }
    loop {
        children.push(parse_tree(cs, pos)?);
        skip_ws(cs, pos);
        match cs.get(*pos) {
            Some(',') => *pos += 1,
            Some(']') => {
                *pos += 1;
                return Ok(Tree::new(children));
            }
            _ => return Err(TreeError::Syntax { col: *pos + 1, msg: "expected `,` or `]`".into() }),
        }
    }
}

/// A sector of a tree. The path lists 1-based branch indices followed by a
/// sector index at the innermost level; its dimension is the number of
/// branch indices. Printed as `i.j.k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(Vec<usize>);

impl Position {
    pub fn root(j: usize) -> Position {
        Position(vec![j])
    }

    pub fn from_path(path: Vec<usize>) -> Position {
        assert!(!path.is_empty(), "positions are nonempty");
        Position(path)
    }

    pub fn path(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// `[i] ++ p`: the position `p` of branch `i`, one dimension up.
    pub fn in_branch(i: usize, p: &Position) -> Position {
        let mut v = Vec::with_capacity(p.0.len() + 1);
        v.push(i);
        v.extend_from_slice(&p.0);
        Position(v)
    }

    fn boundary(&self, target: bool) -> Option<Position> {
        let (_, rest) = self.0.split_last()?;
        let (&i, outer) = rest.split_last()?;
        let mut v = outer.to_vec();
        v.push(if target { i } else { i - 1 });
        Some(Position(v))
    }

    /// Source; `None` in dimension 0.
    pub fn src(&self) -> Option<Position> {
        self.boundary(false)
    }

    pub fn tgt(&self) -> Option<Position> {
        self.boundary(true)
    }

    pub fn name(&self) -> Name {
        Name::new(self.to_string())
    }

    pub fn parse(s: &str) -> Option<Position> {
        let path = s
            .split('.')
            .map(|seg| {
                if seg.is_empty() || !seg.bytes().all(|b| b.is_ascii_digit()) {
                    None
                } else {
                    seg.parse().ok()
                }
            })
            .collect::<Option<Vec<usize>>>()?;
        if path[..path.len() - 1].contains(&0) {
            return None;
        }
        Some(Position(path))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type PositionMap = BTreeMap<Position, Position>;

/// A tree with its bipointed globular set of positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PastingScheme {
    pub tree: Tree,
    pub scheme: Bipointed,
}

impl PastingScheme {
    pub fn new(tree: Tree) -> PastingScheme {
        let positions = tree.positions();
        let mut cells: Vec<BTreeSet<Name>> = vec![BTreeSet::new(); tree.dim() + 1];
        let mut src = BTreeMap::new();
        let mut tgt = BTreeMap::new();
        for p in &positions {
            cells[p.dim()].insert(p.name());
            if let (Some(s), Some(t)) = (p.src(), p.tgt()) {
                src.insert(p.name(), s.name());
                tgt.insert(p.name(), t.name());
            }
        }
        let scheme = Bipointed {
            carrier: GlobularSet::from_parts(cells, src, tgt),
            base_minus: Position::root(0).name(),
            base_plus: Position::root(tree.arity()).name(),
        };
        PastingScheme { tree, scheme }
    }

    pub fn carrier(&self) -> &GlobularSet {
        &self.scheme.carrier
    }
}

fn include(k: usize, tree: &Tree, p: &[usize], target: bool, out: &mut Vec<usize>) {
    if k == 0 {
        out.push(if target { tree.arity() } else { 0 });
        return;
    }
    match p {
        [j] => out.push(*j),
        [i, rest @ ..] => {
            out.push(*i);
            include(k - 1, &tree.children[i - 1], rest, target, out);
        }
        [] => unreachable!("positions are nonempty"),
    }
}

fn inclusion(k: usize, tree: &Tree, target: bool) -> PositionMap {
    tree.boundary(k)
        .positions()
        .into_iter()
        .map(|p| {
            let mut out = Vec::with_capacity(p.0.len());
            include(k, tree, &p.0, target, &mut out);
            (p, Position(out))
        })
        .collect()
}

/// `s_k : Pos(∂_k B) -> Pos(B)`.
pub fn src_inclusion(k: usize, tree: &Tree) -> PositionMap {
    inclusion(k, tree, false)
}

/// `t_k : Pos(∂_k B) -> Pos(B)`.
pub fn tgt_inclusion(k: usize, tree: &Tree) -> PositionMap {
    inclusion(k, tree, true)
}

fn op_position(w: &DimSet, tree: &Tree, p: &[usize], out: &mut Vec<usize>) {
    let n = tree.arity();
    let flip = w.contains(1);
    match p {
        [j] => out.push(if flip { n - j } else { *j }),
        [j, rest @ ..] => {
            let i = if flip { n + 1 - j } else { *j };
            out.push(i);
            op_position(&w.minus_one(), &tree.children[i - 1], rest, out);
        }
        [] => unreachable!("positions are nonempty"),
    }
}

/// The isomorphism `Pos(op_w B) -> op_w Pos(B)`, as a map from positions of
/// `op_w B` to positions of `B`.
pub fn op_positions_iso(w: &DimSet, tree: &Tree) -> PositionMap {
    tree.op(w)
        .positions()
        .into_iter()
        .map(|p| {
            let mut out = Vec::with_capacity(p.0.len());
            op_position(w, tree, &p.0, &mut out);
            (p, Position(out))
        })
        .collect()
}

pub fn invert(map: &PositionMap) -> PositionMap {
    map.iter().map(|(a, b)| (b.clone(), a.clone())).collect()
}

/// `g ∘ f`; positions missing from `g` are dropped.
pub fn compose_maps(f: &PositionMap, g: &PositionMap) -> PositionMap {
    f.iter()
        .filter_map(|(a, b)| g.get(b).map(|c| (a.clone(), c.clone())))
        .collect()
}

pub fn to_name_map(map: &PositionMap) -> BTreeMap<Name, Name> {
    map.iter().map(|(a, b)| (a.name(), b.name())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::globular::{disk, is_morphism, suspend, wedge};

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    fn pos(s: &str) -> Position {
        Position::parse(s).unwrap()
    }

    #[test]
    fn literal_round_trip() {
        let b = t("[ [ [],[] ], [] ]");
        assert_eq!(b.to_string(), "[[[],[]],[]]");
        assert_eq!(t(&b.to_string()), b);
        assert!("[[]".parse::<Tree>().is_err());
        assert!("[]]".parse::<Tree>().is_err());
        assert!("[[],]".parse::<Tree>().is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(Tree::leaf().dim(), 0);
        assert_eq!(t("[[[],[]],[]]").dim(), 2);
        assert_eq!(Tree::disk(2), t("[[[]]]"));
        for n in 1..=4 {
            for m in 1..=4 {
                for k in 0..n.min(m) {
                    assert_eq!(Tree::comp(n, k, m).unwrap().dim(), n.max(m));
                }
            }
        }
    }

    #[test]
    fn comp_tree_shapes() {
        assert_eq!(Tree::comp(1, 0, 1).unwrap(), t("[[],[]]"));
        assert_eq!(Tree::comp(2, 1, 2).unwrap(), t("[[[],[]]]"));
        assert_eq!(Tree::comp(2, 0, 1).unwrap(), t("[[[]],[]]"));
        assert_eq!(
            Tree::comp(2, 2, 3),
            Err(TreeError::InvalidComposite { n: 2, k: 2, m: 3 })
        );
        assert!(Tree::comp(0, 0, 1).is_err());
    }

    #[test]
    fn boundaries() {
        let b = t("[[[],[]],[]]");
        assert_eq!(b.boundary(1), t("[[],[]]"));
        assert_eq!(b.boundary(0), Tree::leaf());
        assert_eq!(b.boundary(2), b);
        assert_eq!(b.boundary(7), b);
    }

    #[test]
    fn example_scheme_counts() {
        let s = t("[[[],[]],[]]").scheme();
        assert_eq!(s.carrier().cell_counts(), vec![3, 4, 2]);
        assert_eq!(s.scheme.base_minus.as_str(), "0");
        assert_eq!(s.scheme.base_plus.as_str(), "2");
    }

    #[test]
    fn disk_scheme_is_the_disk() {
        for k in 0..5 {
            assert_eq!(Tree::disk(k).scheme().scheme.carrier, disk(k));
        }
    }

    #[test]
    fn position_boundaries() {
        assert_eq!(pos("1.1.0").src(), Some(pos("1.0")));
        assert_eq!(pos("1.1.0").tgt(), Some(pos("1.1")));
        assert_eq!(pos("2.0").src(), Some(pos("1")));
        assert_eq!(pos("2.0").tgt(), Some(pos("2")));
        assert_eq!(pos("3").src(), None);
        assert_eq!(pos("1.2.0").dim(), 2);
        assert!(Position::parse("0.1").is_none());
        assert!(Position::parse("1..0").is_none());
        assert!(Position::parse("x").is_none());
    }

    #[test]
    fn contains_position() {
        let b = t("[[[],[]],[]]");
        for p in b.positions() {
            assert!(b.contains_position(&p));
        }
        assert!(!b.contains_position(&pos("3")));
        assert!(!b.contains_position(&pos("2.1.0")));
        assert!(!b.contains_position(&pos("1.3")));
    }

    #[test]
    fn inclusions_of_the_example_tree() {
        let b = t("[[[],[]],[]]");
        let s = src_inclusion(1, &b);
        let tt = tgt_inclusion(1, &b);
        assert_eq!(s[&pos("1.0")], pos("1.0"));
        assert_eq!(tt[&pos("1.0")], pos("1.2"));
        assert_eq!(s[&pos("2.0")], pos("2.0"));
        assert_eq!(s[&pos("1")], pos("1"));
        assert_eq!(src_inclusion(0, &b)[&pos("0")], pos("0"));
        assert_eq!(tgt_inclusion(0, &b)[&pos("0")], pos("2"));
        let bd = b.boundary(1).scheme();
        for m in [&s, &tt] {
            assert!(is_morphism(&to_name_map(m), bd.carrier(), b.scheme().carrier()));
        }
    }

    #[test]
    fn op_trees_from_the_four_diagram_figure() {
        let b = t("[[[[]],[]],[]]");
        assert_eq!(b.op(&DimSet::of(&[1])), t("[[],[[[]],[]]]"));
        assert_eq!(b.op(&DimSet::of(&[2])), t("[[[],[[]]],[]]"));
    }

    #[test]
    fn op_iso_of_a_two_branch_tree() {
        let b = t("[[],[]]");
        let iso = op_positions_iso(&DimSet::of(&[1]), &b);
        for (a, c) in [("0", "2"), ("1", "1"), ("2", "0"), ("1.0", "2.0"), ("2.0", "1.0")] {
            assert_eq!(iso[&pos(a)], pos(c));
        }
    }

    #[test]
    fn positions_recursion_matches_wedge_of_suspensions() {
        for b in Tree::enumerate(5) {
            let parts: Vec<_> = b.children().iter().map(|c| suspend(c.scheme().carrier())).collect();
            let w = wedge(&parts);
            // wedge names a shifted cell of part i `i.1.p`; canonical is `i.p`
            let renamed = w.carrier.rename(|c| {
                let s = c.as_str();
                match s.split_once('.') {
                    Some((i, rest)) => Name::new(format!("{i}.{}", &rest[2..])),
                    None => c.clone(),
                }
            });
            let s = b.scheme();
            assert_eq!(renamed, s.scheme.carrier, "{b}");
            assert_eq!((&w.base_minus, &w.base_plus), (&s.scheme.base_minus, &s.scheme.base_plus));
        }
    }

    #[test]
    fn suspension_of_positions_is_positions_of_suspension() {
        for b in Tree::enumerate(5) {
            assert_eq!(suspend(b.scheme().carrier()), b.suspend().scheme().scheme);
        }
    }

    #[test]
    fn enumeration_counts() {
        // Catalan numbers C_{n-1}
        let trees = Tree::enumerate(6);
        let mut counts = [0usize; 7];
        for t in &trees {
            counts[t.node_count()] += 1;
        }
        assert_eq!(&counts[1..], &[1, 1, 2, 5, 14, 42]);
        let distinct: BTreeSet<_> = trees.iter().collect();
        assert_eq!(distinct.len(), trees.len());
    }
}
