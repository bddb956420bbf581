//! Small-root engine for trivariate polynomials of the shape
//! `c4·xy + c3·x + c2·y + c1·z + c0`: shift sets, bound evaluators,
//! lattice construction and extraction of independent polynomials.

mod bounds;
mod engine;

pub use bounds::{
    bound_bivariate, bound_corollary52, bound_ernst, bound_general, gamma_feasibility, general_slack_holds,
    BoundVerdict,
};
pub use engine::{build_lattice, find_independent_polys, BuiltLattice, Diagnostics, SmallRootsOutcome, Status};

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Monomial, MultiPoly};

/// Lattices above this dimension are not reduced by default.
pub const DEFAULT_MAX_DIM: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmallRootsError {
    #[error("polynomial must have arity 3, found {0}")]
    NotTrivariate(usize),
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is not primitive (content {0})")]
    NotPrimitive(BigInt),
    #[error("constant term {c0} is not invertible modulo R = {r}")]
    NonInvertibleConstantTerm { c0: BigInt, r: BigInt },
    #[error("height W must be at least 2")]
    HeightTooSmall,
    #[error("bounds must be >= 1")]
    InvalidBounds,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// `|x0| < X`, `|y0| < Y`, `|z0| < Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBounds {
    #[serde(with = "crate::serde_big")]
    pub x: BigInt,
    #[serde(with = "crate::serde_big")]
    pub y: BigInt,
    #[serde(with = "crate::serde_big")]
    pub z: BigInt,
}

impl RootBounds {
    pub fn new(x: BigInt, y: BigInt, z: BigInt) -> Result<Self, SmallRootsError> {
        if [&x, &y, &z].iter().any(|b| !b.is_positive()) {
            return Err(SmallRootsError::InvalidBounds);
        }
        Ok(RootBounds { x, y, z })
    }

    pub fn as_vec(&self) -> Vec<BigInt> {
        vec![self.x.clone(), self.y.clone(), self.z.clone()]
    }

    /// Whether the point lies strictly inside the box.
    pub fn contains(&self, p: &[BigInt]) -> bool {
        p.len() == 3 && p[0].abs() < self.x && p[1].abs() < self.y && p[2].abs() < self.z
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeParams {
    /// Multiplicity: shifts come from the monomials of `f^{mult−1}`.
    pub mult: u32,
    /// Extra z-shifts, `⌈τ·mult⌉` unless overridden.
    pub t_shifts: u32,
    #[serde(with = "crate::serde_big::rational")]
    pub tau: BigRational,
    #[serde(with = "crate::serde_big::rational")]
    pub eps: BigRational,
    #[serde(with = "crate::serde_big::rational")]
    pub c_slack: BigRational,
    #[serde(with = "crate::serde_big::rational")]
    pub lll_delta: BigRational,
    pub max_dim: usize,
    /// Move `W` and the bounds to the nearest values coprime to the
    /// constant term instead of failing with `NonInvertibleConstantTerm`.
    pub adjust_modulus: bool,
    /// Reduce the lattice even when the size bound fails.
    pub reduce_violated: bool,
}

impl LatticeParams {
    pub fn new(mult: u32, tau: BigRational, eps: BigRational) -> Result<Self, SmallRootsError> {
        let t = (&tau * BigRational::from_integer(mult.into())).ceil().to_integer();
        let t_shifts = u32::try_from(t).map_err(|_| SmallRootsError::InvalidParams("tau must be >= 0".into()))?;
        let p = LatticeParams {
            mult,
            t_shifts,
            tau,
            eps,
            c_slack: BigRational::zero(),
            lll_delta: BigRational::new(3.into(), 4.into()),
            max_dim: DEFAULT_MAX_DIM,
            adjust_modulus: true,
            reduce_violated: true,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), SmallRootsError> {
        let bad = |m: &str| Err(SmallRootsError::InvalidParams(m.into()));
        if self.mult == 0 {
            return bad("mult must be >= 1");
        }
        if self.tau.is_negative() {
            return bad("tau must be >= 0");
        }
        if !self.eps.is_positive() {
            return bad("eps must be > 0");
        }
        let cap = BigRational::from_integer(2.into()) + BigRational::from_integer(3.into()) * &self.tau;
        if self.eps >= cap {
            return bad("eps must be < 2 + 3*tau");
        }
        if self.c_slack.is_negative() {
            return bad("c_slack must be >= 0");
        }
        let quarter = BigRational::new(1.into(), 4.into());
        if self.lll_delta <= quarter || self.lll_delta >= BigRational::one() {
            return bad("lll_delta must lie in (1/4, 1)");
        }
        Ok(())
    }
}

impl Default for LatticeParams {
    fn default() -> Self {
        LatticeParams::new(1, BigRational::zero(), BigRational::new(1.into(), 100.into())).expect("valid defaults")
    }
}

/// Shift monomials `S` and support monomials `T`, with the exponent sums
/// of `T∖S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftSets {
    #[serde(skip)]
    pub s_set: Vec<Monomial>,
    #[serde(skip)]
    pub t_set: Vec<Monomial>,
    pub s1: u64,
    pub s2: u64,
    pub s3: u64,
    pub s: usize,
    pub t_card: usize,
}

/// `S = {α·z^j : α ∈ monomials(f^{mult−1}), 0 ≤ j ≤ t}`,
/// `T = ⋃_{α∈S} monomials(x^α·f)`.
pub fn admissible_sets(f: &MultiPoly, params: &LatticeParams) -> Result<ShiftSets, SmallRootsError> {
    if f.arity() != 3 {
        return Err(SmallRootsError::NotTrivariate(f.arity()));
    }
    if f.is_zero() {
        return Err(SmallRootsError::ZeroPolynomial);
    }
    if params.mult == 0 {
        return Err(SmallRootsError::InvalidParams("mult must be >= 1".into()));
    }
    let content = f.content();
    if !content.is_one() {
        return Err(SmallRootsError::NotPrimitive(content));
    }
    let base: Vec<Monomial> = f.pow(params.mult - 1).monomials().cloned().collect();
    let mut s_set = BTreeSet::new();
    for a in &base {
        for j in 0..=params.t_shifts {
            let mut m = a.clone();
            m.0[2] += j;
            s_set.insert(m);
        }
    }
    let mut t_set = BTreeSet::new();
    for a in &s_set {
        for b in f.monomials() {
            t_set.insert(a.mul(b));
        }
    }
    let (mut s1, mut s2, mut s3) = (0u64, 0u64, 0u64);
    for m in t_set.difference(&s_set) {
        s1 += m.0[0] as u64;
        s2 += m.0[1] as u64;
        s3 += m.0[2] as u64;
    }
    Ok(ShiftSets {
        s: s_set.len(),
        t_card: t_set.len(),
        s_set: s_set.into_iter().collect(),
        t_set: t_set.into_iter().collect(),
        s1,
        s2,
        s3,
    })
}
