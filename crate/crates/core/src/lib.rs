//! Trivariate small-roots factoring experiments.
//!
//! The crate is split along the pipeline: exact polynomial arithmetic
//! ([`poly`]), a univariate analysis toolkit ([`uni`]), Sylvester
//! resultants ([`resultant`]), exact LLL ([`lattice`]), the small-roots
//! engine ([`smallroots`]) and the factoring driver ([`factorizer`]).

pub mod arith;
pub mod config;
pub mod factorizer;
pub mod lattice;
pub mod poly;
pub mod resultant;
pub mod serde_big;
pub mod smallroots;
pub mod uni;

pub use num_bigint::BigInt as Integer;
pub use num_rational::BigRational as Rational;

pub use poly::{Monomial, MultiPoly, PolyError, UniPoly};

/// Crate version echoed into reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
