use crate::computads::{BipointedComputad, Cell, Computad, DoubleCell, Leaf, Sphere, Substitution};
use crate::dimset::DimSet;
use crate::trees::{invert, op_positions_iso};

/// Opposite with arbitrary leaves: leaves are relabelled by `leaf`, keeping
/// their dimension.
pub fn op_cell_with<V: Leaf, W: Leaf>(w: &DimSet, c: &Cell<V>, leaf: &mut impl FnMut(&V) -> W) -> Cell<W> {
    match c {
        Cell::Var { gen, dim } => Cell::var(leaf(gen), *dim),
        Cell::Coh(coh) => {
            let tree = coh.tree.op(w);
            let iso = op_positions_iso(w, &coh.tree);
            let inv = invert(&iso);
            let sphere = op_sphere(w, &coh.sphere);
            let sphere = Sphere::new(sphere.src.rename_positions(&inv), sphere.tgt.rename_positions(&inv));
            let sub: Substitution<W> = iso
                .iter()
                .map(|(p_op, p)| {
                    let x = coh.sub.get(&p.name()).expect("substitution is total");
                    (p_op.name(), op_cell_with(w, x, leaf))
                })
                .collect();
            Cell::coh(tree, sphere, sub)
        }
    }
}

/// `op_w` on cells; generators are unchanged.
pub fn op_cell(w: &DimSet, c: &Cell) -> Cell {
    if w.is_empty() {
        return c.clone();
    }
    op_cell_with(w, c, &mut Clone::clone)
}

/// `op_w (a, b)` is `(op b, op a)` when `dim + 1 ∈ w`, else `(op a, op b)`.
pub fn op_sphere_with<V: Leaf, W: Leaf>(
    w: &DimSet,
    s: &Sphere<V>,
    leaf: &mut impl FnMut(&V) -> W,
) -> Sphere<W> {
    let a = op_cell_with(w, &s.src, leaf);
    let b = op_cell_with(w, &s.tgt, leaf);
    if w.contains(s.dim() + 1) {
        Sphere::new(b, a)
    } else {
        Sphere::new(a, b)
    }
}

pub fn op_sphere(w: &DimSet, s: &Sphere) -> Sphere {
    op_sphere_with(w, s, &mut Clone::clone)
}

pub fn op_morphism(w: &DimSet, sigma: &Substitution) -> Substitution {
    sigma.iter().map(|(k, c)| (k.clone(), op_cell(w, c))).collect()
}

/// Same generators, opposite attachments.
pub fn op_computad(w: &DimSet, c: &Computad) -> Computad {
    c.map_attachments(|_, s| op_sphere(w, s))
}

/// Basepoints swap iff `1 ∈ w`.
pub fn op_bipointed(w: &DimSet, c: &BipointedComputad) -> BipointedComputad {
    let (m, p) = if w.contains(1) {
        (c.base_plus.clone(), c.base_minus.clone())
    } else {
        (c.base_minus.clone(), c.base_plus.clone())
    };
    BipointedComputad { computad: op_computad(w, &c.computad), base_minus: m, base_plus: p }
}

/// Transport of a double cell through `op_w`: leaves are opposite cells.
pub fn op_double(w: &DimSet, c: &DoubleCell) -> DoubleCell {
    op_cell_with(w, c, &mut |u| op_cell(w, u))
}
