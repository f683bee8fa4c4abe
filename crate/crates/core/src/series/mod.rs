//! Exact arithmetic for Laurent polynomials over `Q(i)` and 2×2 matrices of them.
//!
//! Every algebraic identity in the crate (unit determinants, null derivatives,
//! pole-order bounds) is checked here without rounding. Numerical evaluation
//! goes through [`LaurentPoly::eval`] and [`LaurentMatrix::eval`].

mod gaussian;
mod json;
mod laurent;
mod matrix;
pub(crate) mod rational;

pub use gaussian::{parse_rational, GaussianRational};
pub use laurent::LaurentPoly;
pub use matrix::LaurentMatrix;
pub use rational::RationalForm;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("evaluation at z = 0 of a polynomial with negative exponents")]
    PoleAtZero,
    #[error("malformed rational `{0}` (expected \"p/q\" or \"p\")")]
    BadRational(String),
}

/// Ring operation selector for [`lp_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn lp_arith(p: &LaurentPoly, q: &LaurentPoly, op: ArithOp) -> LaurentPoly {
    match op {
        ArithOp::Add => p + q,
        ArithOp::Sub => p - q,
        ArithOp::Mul => p * q,
    }
}
