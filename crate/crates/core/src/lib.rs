pub mod computads;
pub mod corpus;
pub mod dimset;
pub mod dot;
pub mod globular;
pub mod homcat;
pub mod json;
pub mod laws;
pub mod metaops;
pub mod name;
pub mod oplib;
pub mod surface;
pub mod trees;

pub use dimset::DimSet;
pub use name::Name;
pub use trees::{Position, Tree};
