//! Exact computation with truncated twisted power series over local
//! augmentations: LDU pivoting determinants, the commutator subgroup that
//! measures their ambiguity, cyclic-word logarithms, and Novikov-ring
//! orbit counting.

pub mod coeff;
pub mod error;
pub mod kgroup;
pub mod linalg;
pub mod matops;
pub mod novikov;
pub mod random;
pub mod tps;
pub mod word;

pub use error::{Error, Result};

/// Exact rational numbers.
pub type Q = num_rational::BigRational;
