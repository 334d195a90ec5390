//! Suspension and opposites of computads, cells, spheres and morphisms.

mod opposite;
mod suspension;

pub use opposite::{
    op_bipointed, op_cell, op_cell_with, op_computad, op_double, op_morphism, op_sphere,
    op_sphere_with,
};
pub use suspension::{
    desuspend_cell, desuspend_computad, desuspend_sphere, minus, plus, suspend_cell,
    suspend_cell_with, suspend_computad, suspend_double, suspend_morphism, suspend_position,
    suspend_sphere, DesuspendError, DesuspendErrorKind,
};
pub(crate) use suspension::check_desuspended_fullness;
