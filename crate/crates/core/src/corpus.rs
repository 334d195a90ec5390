//! Deterministic sample families used by the law harness, the CLI and the
//! benches.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::computads::{free_computad, src_k, tgt_k, typecheck, unit, Cell, Computad, DoubleCell, FreeOnCells};
use crate::globular::disk;
use crate::homcat::{hom_factor, is_indecomposable, HomCell, HomSignature};
use crate::name::Name;
use crate::oplib::{comp_cell, compose, eh_computad, identity_cell};
use crate::trees::{Position, Tree};

/// A cell together with the computad it lives in.
#[derive(Debug, Clone)]
pub struct Sample {
    pub label: String,
    pub home: Arc<Computad>,
    pub cell: Cell,
}

/// New loop cells admitted per depth level of the Eckmann-Hilton corpus.
pub const LOOP_LEVEL_CAP: usize = 40;
/// Loop cells above this dimension are not generated.
pub const LOOP_MAX_DIM: usize = 3;

fn sample(label: impl Into<String>, home: &Arc<Computad>, cell: Cell) -> Sample {
    Sample { label: label.into(), home: home.clone(), cell }
}

fn scheme_home(tree: &Tree) -> Arc<Computad> {
    Arc::new(free_computad(tree.scheme().carrier()))
}

fn pvar(p: &str) -> Cell {
    let pos = Position::parse(p).expect("literal position");
    Cell::var(Name::from(p), pos.dim())
}

/// Every binary composition template `comp(n,k,m)` with `n, m <= max`.
pub fn templates(max: usize) -> Vec<Sample> {
    let mut out = Vec::new();
    for n in 1..=max {
        for m in 1..=max {
            for k in 0..n.min(m) {
                let tree = Tree::comp(n, k, m).expect("k < min(n, m)");
                let home = scheme_home(&tree);
                let c = comp_cell(n, k, m).expect("templates are well formed");
                out.push(sample(format!("comp({n},{k},{m})"), &home, c));
            }
        }
    }
    out
}

/// Depth-indexed closure of the generators of the Eckmann-Hilton computad
/// under identities and binary composites. A level-`d` cell uses at least one
/// level-`d-1` cell; each level admits at most [`LOOP_LEVEL_CAP`] new cells,
/// taken in order of total argument size, then generation order.
pub fn eh_loops(depth: usize) -> Vec<(usize, Cell)> {
    let eh = eh_computad();
    let c = &eh.computad;
    let mut seen: BTreeSet<Cell> = BTreeSet::new();
    let mut levels: Vec<Vec<Cell>> = vec![["x", "a", "b"].iter().map(|g| c.var(g).expect("generator")).collect()];
    seen.extend(levels[0].iter().cloned());
    for d in 1..=depth {
        let prev: Vec<&Cell> = levels.iter().flatten().collect();
        let fresh: BTreeSet<&Cell> = levels[d - 1].iter().collect();
        let faces: Vec<Vec<(Cell, Cell)>> = prev
            .iter()
            .map(|u| {
                (0..u.dim())
                    .map(|k| (src_k(c, *u, k).expect("checked"), tgt_k(c, *u, k).expect("checked")))
                    .collect()
            })
            .collect();
        // (weight, left, k, right); identities use k = usize::MAX
        let mut moves: Vec<(usize, usize, usize, usize)> = Vec::new();
        for (i, u) in prev.iter().enumerate() {
            if fresh.contains(u) && u.dim() < LOOP_MAX_DIM {
                moves.push((u.size(), i, usize::MAX, i));
            }
            for (j, v) in prev.iter().enumerate() {
                if !fresh.contains(u) && !fresh.contains(v) {
                    continue;
                }
                for (k, (fu, fv)) in faces[i].iter().zip(&faces[j]).enumerate().take(u.dim().min(v.dim())) {
                    if fu.1 == fv.0 {
                        moves.push((u.size() + v.size(), i, k, j));
                    }
                }
            }
        }
        moves.sort();
        let mut level = Vec::new();
        for (_, i, k, j) in moves {
            if level.len() == LOOP_LEVEL_CAP {
                break;
            }
            let made = if k == usize::MAX {
                identity_cell(c, prev[i])
            } else {
                compose(c, prev[i], k, prev[j])
            };
            match made {
                Ok(x) if x.dim() <= LOOP_MAX_DIM && !seen.contains(&x) => {
                    seen.insert(x.clone());
                    level.push(x);
                }
                _ => {}
            }
        }
        levels.push(level);
    }
    levels
        .into_iter()
        .enumerate()
        .flat_map(|(d, l)| l.into_iter().map(move |x| (d, x)))
        .filter(|(_, x)| x.dim() > 0)
        .collect()
}

/// The general cell corpus: templates, generators, identities, composites in
/// pasting computads and the Eckmann-Hilton loops up to depth 2.
pub fn cells() -> Vec<Sample> {
    let mut out = templates(3);
    for n in 0..=3 {
        let home = Arc::new(free_computad(&disk(n)));
        let top = home.generators_of_dim(n).next().expect("disk has a top cell").clone();
        let v = Cell::var(top.clone(), n);
        let idv = identity_cell(home.as_ref(), &v).expect("identity");
        out.push(sample(format!("D{n}:{top}"), &home, v));
        if n < 3 {
            let idid = identity_cell(home.as_ref(), &idv).expect("identity");
            out.push(sample(format!("D{n}:id(id {top})"), &home, idid));
        }
        out.push(sample(format!("D{n}:id {top}"), &home, idv));
    }
    let path = scheme_home(&Tree::comp(1, 0, 1).unwrap());
    let (f, g) = (pvar("1.0"), pvar("2.0"));
    let idf = identity_cell(path.as_ref(), &f).unwrap();
    let idg = identity_cell(path.as_ref(), &g).unwrap();
    for (label, l, r) in [("f;g", &f, &g), ("id f;g", &idf, &g), ("f;id g", &f, &idg)] {
        out.push(sample(format!("path:{label}"), &path, compose(path.as_ref(), l, 0, r).unwrap()));
    }
    let whisk = scheme_home(&Tree::comp(2, 0, 1).unwrap());
    let (al, h) = (pvar("1.1.0"), pvar("2.0"));
    let ah = compose(whisk.as_ref(), &al, 0, &h).unwrap();
    out.push(sample("whisker:a;h", &whisk, ah.clone()));
    out.push(sample("whisker:id(a;h)", &whisk, identity_cell(whisk.as_ref(), &ah).unwrap()));
    let eh = Arc::new(eh_computad().computad);
    for (d, c) in eh_loops(2) {
        out.push(sample(format!("eh[{d}]:{c}"), &eh, c));
    }
    out
}

/// Double cells over the Eckmann-Hilton computad and a path: units,
/// identities and composites in the free computad on cells.
pub fn double_cells() -> Vec<(Arc<Computad>, DoubleCell)> {
    let mut out = Vec::new();
    let eh = Arc::new(eh_computad().computad);
    let sig = FreeOnCells(eh.as_ref());
    let base: Vec<Cell> = eh_loops(1).into_iter().map(|(_, c)| c).collect();
    for c in &base {
        out.push((eh.clone(), unit(c)));
        if c.dim() < LOOP_MAX_DIM {
            out.push((eh.clone(), identity_cell(&sig, &unit(c)).expect("identity")));
        }
    }
    for u in base.iter().take(6) {
        for v in base.iter().take(6) {
            for k in 0..u.dim().min(v.dim()) {
                if let Ok(d) = compose(&sig, &unit(u), k, &unit(v)) {
                    out.push((eh.clone(), d));
                }
            }
        }
    }
    let path = scheme_home(&Tree::comp(1, 0, 1).unwrap());
    let psig = FreeOnCells(path.as_ref());
    let (f, g) = (unit(&pvar("1.0")), unit(&pvar("2.0")));
    let fg = compose(&psig, &f, 0, &g).unwrap();
    out.push((path.clone(), fg.clone()));
    out.push((path.clone(), identity_cell(&psig, &fg).unwrap()));
    let inner = compose(path.as_ref(), &pvar("1.0"), 0, &pvar("2.0")).unwrap();
    out.push((path.clone(), unit(&inner)));
    out.push((path.clone(), identity_cell(&psig, &unit(&inner)).unwrap()));
    out
}

/// Hom-level cells over the Eckmann-Hilton computad: factorized loops and
/// hom-level identities and composites of their generators.
pub fn hom_cells() -> Vec<HomCell> {
    let eh = eh_computad();
    let hs = HomSignature(&eh);
    let loops: Vec<Cell> = eh_loops(2).into_iter().map(|(_, c)| c).collect();
    let mut gens: Vec<HomCell> = Vec::new();
    let mut out: BTreeSet<HomCell> = BTreeSet::new();
    for c in &loops {
        let h = hom_factor(&eh, c).expect("loops factor");
        if is_indecomposable(&eh, c).unwrap_or(false) && gens.len() < 8 {
            gens.push(h.clone());
        }
        out.insert(h);
    }
    for g in &gens {
        if let Ok(i) = identity_cell(&hs, g) {
            out.insert(i);
        }
        for g2 in &gens {
            for k in 0..g.dim().min(g2.dim()) {
                if let Ok(c) = compose(&hs, g, k, g2) {
                    out.insert(c);
                }
            }
        }
    }
    out.into_iter().filter(|h| typecheck(&hs, h).is_ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        assert_eq!(templates(3).len(), 14);
        assert!(cells().len() >= 50, "{}", cells().len());
        assert!(double_cells().len() >= 20);
        assert!(!hom_cells().is_empty());
    }

    #[test]
    fn corpus_cells_typecheck() {
        for s in cells() {
            assert!(typecheck(s.home.as_ref(), &s.cell).is_ok(), "{}", s.label);
        }
    }

    #[test]
    fn loop_corpus_is_deterministic() {
        assert_eq!(eh_loops(3), eh_loops(3));
        let l1: Vec<_> = eh_loops(1).into_iter().map(|(_, c)| c.to_string()).collect();
        assert!(l1.contains(&"a".to_string()));
    }
}
