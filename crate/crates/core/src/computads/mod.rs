//! Computads, cells, and the typechecker.

mod cell;
mod check;
mod computad;

pub use cell::{Cell, Coherence, Leaf, Sphere, Substitution};
pub use check::{
    boundary, check_sphere, check_substitution, fullness_defect, is_full, src, src_k, substitute,
    substitute_sphere, support, tgt, tgt_k, typecheck, PastingContext, Signature, TermPath,
    TypeError, TypeErrorKind,
};
pub use computad::{
    apply_morphism, apply_morphism_sphere, check_morphism, compose_morphisms, counit_eval,
    free_computad, identity_morphism, unit, BipointedComputad, Computad, ComputadError,
    DoubleCell, FreeOnCells, MorphismError,
};
