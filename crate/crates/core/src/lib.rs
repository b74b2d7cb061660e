//! Exact computations with Smith ideals, augmented algebras and their
//! non-unital counterparts, over `Q` and `F_p`, in vector spaces and in
//! bounded chain complexes.

pub mod algebra;
pub mod arrow;
pub mod chain;
pub mod corpus;
pub mod dg;
pub mod error;
pub mod field;
pub mod format;
pub mod linalg;
pub mod matrix;
pub mod report;
pub mod smith;
pub mod suite;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
