//! Exact sparse multivariate and dense univariate polynomials over ℤ.

mod multi;
mod parse;
mod symmetric;
mod uni;

pub use multi::{monomial_value, Monomial, MultiPoly};
pub use parse::var_name;
pub use symmetric::{monomial_dim, newton_identities, NewtonDirection};
pub use uni::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("bounds must be positive")]
    NonPositiveBound,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("input length {found} does not match n = {expected}")]
    LengthMismatch { expected: usize, found: usize },
}
