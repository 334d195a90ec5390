use thiserror::Error;

use crate::computads::{
    fullness_defect, BipointedComputad, Cell, Computad, DoubleCell, Leaf, Sphere, Substitution,
    TermPath,
};
use crate::globular::{suspended_name, SUSP_MINUS, SUSP_PLUS};
use crate::name::Name;
use crate::trees::Position;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesuspendErrorKind {
    #[error("not a suspension: {0}")]
    NotASuspension(String),
    #[error("desuspended sphere is not full: {0}")]
    DesuspendedNotFull(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} (at {path})")]
pub struct DesuspendError {
    pub kind: DesuspendErrorKind,
    pub path: TermPath,
}

impl DesuspendError {
    fn not(msg: impl Into<String>) -> Self {
        DesuspendError {
            kind: DesuspendErrorKind::NotASuspension(msg.into()),
            path: TermPath::root(),
        }
    }

    fn at(mut self, seg: impl Into<String>) -> Self {
        self.path = self.path.prepend(seg);
        self
    }

    pub fn code(&self) -> &'static str {
        match self.kind {
            DesuspendErrorKind::NotASuspension(_) => "NotASuspension",
            DesuspendErrorKind::DesuspendedNotFull(_) => "DesuspendedNotFull",
        }
    }
}

pub fn minus() -> Name {
    Name::from(SUSP_MINUS)
}

pub fn plus() -> Name {
    Name::from(SUSP_PLUS)
}

/// Suspension with arbitrary leaves: each leaf is relabelled by `leaf` and
/// moves up a dimension; the new root sectors go to `base`.
pub fn suspend_cell_with<V: Leaf, W: Leaf>(
    c: &Cell<V>,
    leaf: &mut impl FnMut(&V) -> W,
    base: &(W, W),
) -> Cell<W> {
    match c {
        Cell::Var { gen, dim } => Cell::var(leaf(gen), dim + 1),
        Cell::Coh(coh) => {
            let mut sub: Substitution<W> = Substitution::new(Default::default());
            sub.insert(minus(), Cell::var(base.0.clone(), 0));
            sub.insert(plus(), Cell::var(base.1.clone(), 0));
            for (p, x) in coh.sub.iter() {
                sub.insert(suspended_name(p), suspend_cell_with(x, leaf, base));
            }
            Cell::coh(coh.tree.suspend(), suspend_sphere(&coh.sphere), sub)
        }
    }
}

/// `Σ(var v) = var 1.v`, `Σ coh{B}{A}{τ} = coh{br[B]}{ΣA}{Στ}`.
pub fn suspend_cell(c: &Cell) -> Cell {
    suspend_cell_with(c, &mut suspended_name, &(minus(), plus()))
}

pub fn suspend_sphere(s: &Sphere) -> Sphere {
    Sphere::new(suspend_cell(&s.src), suspend_cell(&s.tgt))
}

/// `Σσ`: basepoints to basepoints, `1.v ↦ Σ(σ v)`.
pub fn suspend_morphism(sigma: &Substitution) -> Substitution {
    let mut out: Substitution = [
        (minus(), Cell::var(minus(), 0)),
        (plus(), Cell::var(plus(), 0)),
    ]
    .into_iter()
    .collect();
    for (k, c) in sigma.iter() {
        out.insert(suspended_name(k), suspend_cell(c));
    }
    out
}

/// Transport of a double cell through suspension: leaves are suspended cells.
pub fn suspend_double(c: &DoubleCell) -> DoubleCell {
    suspend_cell_with(
        c,
        &mut suspend_cell,
        &(Cell::var(minus(), 0), Cell::var(plus(), 0)),
    )
}

/// `ΣC`: fresh basepoints `0`, `1`; each generator `v` becomes `1.v`.
pub fn suspend_computad(c: &Computad) -> BipointedComputad {
    let mut out = Computad::new();
    out.insert_unchecked(minus(), None);
    out.insert_unchecked(plus(), None);
    for (name, _, attach) in c.generators() {
        let sphere = match attach {
            Some(s) => suspend_sphere(s),
            None => Sphere::new(Cell::var(minus(), 0), Cell::var(plus(), 0)),
        };
        out.insert_unchecked(suspended_name(name), Some(sphere));
    }
    BipointedComputad { computad: out, base_minus: minus(), base_plus: plus() }
}

fn unsuspend_name(v: &Name) -> Option<Name> {
    v.strip_prefix(SUSP_PLUS)?.strip_prefix('.').map(Name::from)
}

/// Inverse of [`suspend_cell`] on its image.
pub fn desuspend_cell(c: &Cell) -> Result<Cell, DesuspendError> {
    match c {
        Cell::Var { gen, dim } => match (unsuspend_name(gen), dim) {
            (Some(v), d) if *d > 0 => Ok(Cell::var(v, d - 1)),
            _ => Err(DesuspendError::not(format!("generator `{gen}` is not a shifted generator"))),
        },
        Cell::Coh(coh) => {
            let [inner] = coh.tree.children() else {
                return Err(DesuspendError::not(format!(
                    "tree {} has {} branches, not 1",
                    coh.tree,
                    coh.tree.arity()
                )));
            };
            for (key, want) in [(minus(), minus()), (plus(), plus())] {
                match coh.sub.get(&key) {
                    Some(Cell::Var { gen, dim: 0 }) if *gen == want => {}
                    _ => {
                        return Err(DesuspendError::not(format!(
                            "root sector {key} is not sent to the basepoint {want}"
                        ))
                        .at(format!("sub[{key}]")))
                    }
                }
            }
            let sphere = desuspend_sphere(&coh.sphere).map_err(|e| e.at("sphere"))?;
            let mut sub = Substitution::new(Default::default());
            for (k, x) in coh.sub.iter() {
                if *k == minus() || *k == plus() {
                    continue;
                }
                let p = unsuspend_name(k).ok_or_else(|| {
                    DesuspendError::not(format!("`{k}` is not a shifted position"))
                })?;
                sub.insert(p, desuspend_cell(x).map_err(|e| e.at(format!("sub[{k}]")))?);
            }
            check_desuspended_fullness(inner, &sphere)?;
            Ok(Cell::coh(inner.clone(), sphere, sub))
        }
    }
}

pub fn desuspend_sphere(s: &Sphere) -> Result<Sphere, DesuspendError> {
    Ok(Sphere::new(
        desuspend_cell(&s.src).map_err(|e| e.at("src"))?,
        desuspend_cell(&s.tgt).map_err(|e| e.at("tgt"))?,
    ))
}

/// The desuspension of a full sphere over `ΣB` is expected to be full over
/// `B`; this is checked rather than assumed.
pub(crate) fn check_desuspended_fullness(
    tree: &crate::trees::Tree,
    sphere: &Sphere,
) -> Result<(), DesuspendError> {
    let defect = fullness_defect(tree, sphere).map_err(|e| DesuspendError {
        kind: DesuspendErrorKind::DesuspendedNotFull(e.to_string()),
        path: TermPath::root(),
    })?;
    match defect {
        None => Ok(()),
        Some(d) => Err(DesuspendError {
            kind: DesuspendErrorKind::DesuspendedNotFull(d),
            path: TermPath::root().prepend("sphere"),
        }),
    }
}

/// Inverse of [`suspend_computad`] on its image.
pub fn desuspend_computad(c: &Computad) -> Result<Computad, DesuspendError> {
    let zero: Vec<&Name> = c.generators_of_dim(0).collect();
    if zero != [&minus(), &plus()] {
        return Err(DesuspendError::not("0-generators are not exactly `0` and `1`"));
    }
    let mut out = Computad::new();
    for (name, d, attach) in c.generators() {
        if d == 0 {
            continue;
        }
        let seg = format!("generator[{name}]");
        let v = unsuspend_name(name)
            .ok_or_else(|| DesuspendError::not(format!("`{name}` is not a shifted generator")).at(seg.clone()))?;
        let attach = attach.expect("positive generators are attached");
        let sphere = if d == 1 {
            if *attach != Sphere::new(Cell::var(minus(), 0), Cell::var(plus(), 0)) {
                return Err(DesuspendError::not("1-generator not attached from `0` to `1`").at(seg));
            }
            None
        } else {
            Some(desuspend_sphere(attach).map_err(|e| e.at(seg))?)
        };
        out.insert_unchecked(v, sphere);
    }
    Ok(out)
}

/// Position `1.p` of `ΣB` for a position `p` of `B`.
pub fn suspend_position(p: &Position) -> Position {
    Position::in_branch(1, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::computads::{typecheck, PastingContext};
    use crate::trees::Tree;

    fn v(s: &str, d: usize) -> Cell {
        Cell::var(Name::from(s), d)
    }

    fn comp101() -> Cell {
        let t = Tree::comp(1, 0, 1).unwrap();
        Cell::coh(t.clone(), Sphere::new(v("0", 0), v("2", 0)), Substitution::identity(&t))
    }

    #[test]
    fn suspension_of_a_var() {
        assert_eq!(suspend_cell(&v("x", 0)), v("1.x", 1));
        assert_eq!(desuspend_cell(&v("1.x", 1)), Ok(v("x", 0)));
        assert_eq!(desuspend_cell(&v("0", 0)).unwrap_err().code(), "NotASuspension");
    }

    #[test]
    fn suspended_composite_typechecks_and_desuspends() {
        let c = comp101();
        let s = suspend_cell(&c);
        let t = Tree::comp(2, 1, 2).unwrap();
        assert_eq!(s.as_coh().unwrap().tree, t);
        assert_eq!(typecheck(&PastingContext(&t), &s), Ok(2));
        assert_eq!(desuspend_cell(&s), Ok(c));
    }

    #[test]
    fn desuspension_failure_path() {
        let c = suspend_cell(&comp101());
        let coh = c.as_coh().unwrap();
        let mut sub = coh.sub.clone();
        sub.insert(Name::from("1.1.0"), v("0", 0));
        let bad = Cell::coh(coh.tree.clone(), coh.sphere.clone(), sub);
        let err = desuspend_cell(&bad).unwrap_err();
        assert_eq!(err.code(), "NotASuspension");
        assert_eq!(err.path.to_string(), "sub[1.1.0]");
    }

    #[test]
    fn computad_round_trip() {
        let c = crate::computads::free_computad(&crate::globular::disk(2));
        let s = suspend_computad(&c);
        assert_eq!(s.computad.counts(), vec![2, 2, 2, 1]);
        assert_eq!(desuspend_computad(&s.computad), Ok(c));
    }
}
