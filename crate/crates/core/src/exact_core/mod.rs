//! Exact scalars and linear algebra.

pub mod linalg;
pub mod scalar;

pub use linalg::{induced_map, kernel, quotient, rref, solve, solve_one, LinalgError, Mat, Quotient, Solution, Subspace};
pub use scalar::{Field, Fp, ScalarError, Q};
