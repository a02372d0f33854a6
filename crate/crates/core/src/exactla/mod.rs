//! Exact linear algebra over prime fields.

pub mod field;
pub mod matrix;
pub mod sparse;

pub use field::DEFAULT_PRIME;
pub use matrix::{PrimeFieldMatrix, Vector};
pub use sparse::SparseEchelon;
