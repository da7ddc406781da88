//! Exact rational and integer linear algebra.

mod dense;
mod intmat;
pub mod poly;
mod rational;
pub mod sparse;

pub use dense::RatMatrix;
pub use intmat::{IntMatrix, IntMatrixError, SmithForm};
pub use rational::{ParseRationalError, Rational};
pub use sparse::{Echelon, SparseVec};

/// Basis of the right null space of `m`.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}

/// One solution of `m x = b` and the null space, or `None`.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    m.solve(b)
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    m.smith_normal_form()
}

pub fn int_inverse(m: &IntMatrix) -> Result<IntMatrix, IntMatrixError> {
    m.int_inverse()
}
