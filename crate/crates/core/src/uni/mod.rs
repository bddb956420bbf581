//! Univariate toolkit: root bounds, real-root counting and isolation,
//! integer roots, distribution estimates, realness and irreducibility
//! tests, and a floating-point root finder used as an oracle.

mod distribution;
mod numeric;
mod realness;
mod sturm;

pub use distribution::{
    erdos_turan_defect, kac_estimate, positive_root_count_bound, ErdosTuran, KacEstimate,
};
pub use numeric::{
    mahler_measure, numeric_roots, roots_with_multiplicity, ComplexApprox, DEFAULT_TOL,
};
pub use realness::{
    hermite_coefficients, hermite_real_root_test, laguerre_all_real, murty_irreducibility,
    LaguerreVerdict, MurtyOutcome,
};
pub use sturm::{
    count_all_real_roots, count_real_roots, integer_roots, isolate_real_roots, refine,
    sturm_chain, Interval, SturmChain,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::{MultiPoly, UniPoly};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must have degree at least {0}")]
    DegreeTooSmall(usize),
    #[error("all coefficients must be strictly positive")]
    NonPositiveCoefficient,
    #[error("leading and constant coefficients must be nonzero")]
    VanishingExtremeCoefficient,
    #[error("polynomial has a repeated root")]
    NotSquarefree,
    #[error("index out of range: need k <= m <= n")]
    IndexOutOfRange,
    #[error("angles must satisfy 0 <= alpha <= beta <= 2*pi")]
    InvalidAngles,
    #[error("leading coefficient must be positive")]
    NegativeLeadingCoefficient,
    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// `(1 + height)/|a_n|`. Every root lies strictly inside when `|a_n| = 1`.
/// For larger leading coefficients the claim can fail: `362x³ + 726x² −
/// 456x + 477` has a root near −2.664 while the value is 727/362 ≈ 2.008.
/// Root isolation uses [`root_radius`] instead.
pub fn cauchy_bound(f: &UniPoly) -> Result<BigRational, AnalysisError> {
    match f.degree() {
        None => Err(AnalysisError::ZeroPolynomial),
        Some(0) => Err(AnalysisError::DegreeTooSmall(1)),
        Some(_) => Ok(BigRational::new(f.height() + 1, f.lead().abs())),
    }
}

/// `1 + height/|a_n|`, a strict upper bound on the modulus of every root.
pub fn root_radius(f: &UniPoly) -> Result<BigRational, AnalysisError> {
    match f.degree() {
        None => Err(AnalysisError::ZeroPolynomial),
        Some(0) => Err(AnalysisError::DegreeTooSmall(1)),
        Some(_) => Ok(BigRational::new(f.height(), f.lead().abs()) + BigRational::from_integer(1.into())),
    }
}

/// Eneström-Kakeya annulus `(min a_{i−1}/a_i, max a_{i−1}/a_i)` for a
/// polynomial with strictly positive coefficients.
pub fn enestrom_annulus(f: &UniPoly) -> Result<(BigRational, BigRational), AnalysisError> {
    match f.degree() {
        None => return Err(AnalysisError::ZeroPolynomial),
        Some(0) => return Err(AnalysisError::DegreeTooSmall(1)),
        _ => {}
    }
    let c = f.coeffs();
    if c.iter().any(|a| !a.is_positive()) {
        return Err(AnalysisError::NonPositiveCoefficient);
    }
    let ratios: Vec<BigRational> = c
        .windows(2)
        .map(|w| BigRational::new(w[0].clone(), w[1].clone()))
        .collect();
    let lo = ratios.iter().min().cloned().expect("degree >= 1");
    let hi = ratios.iter().max().cloned().expect("degree >= 1");
    Ok((lo, hi))
}

/// Bounds on the coefficient `b_k` of a degree-`m` factor of a degree-`n`
/// polynomial: `(C(m,k)·‖f‖∞, C(n−1,k)·‖f‖₂ + C(n−1,k−1)·|a_m|)`.
pub fn mignotte_factor_bound(
    n: u64,
    m: u64,
    k: u64,
    f_height: &BigInt,
    f_norm2: f64,
    a_m: &BigInt,
) -> Result<(BigInt, f64), AnalysisError> {
    if !(k <= m && m <= n) || n == 0 {
        return Err(AnalysisError::IndexOutOfRange);
    }
    let first = crate::arith::binomial(m, k) * f_height;
    let c1 = crate::arith::binomial(n - 1, k).to_f64().unwrap_or(f64::INFINITY);
    let c2 = if k == 0 {
        0.0
    } else {
        crate::arith::binomial(n - 1, k - 1)
            .to_f64()
            .unwrap_or(f64::INFINITY)
    };
    let am = a_m.abs().to_f64().unwrap_or(f64::INFINITY);
    Ok((first, c1 * f_norm2 + c2 * am))
}

/// `(|Res(f, f′)| / |a_n|^{2n−1})^{1/(n(n−1))}`, the geometric mean of
/// the pairwise root distances. For monic `f` this is exactly
/// `|Res(f, f′)|^{1/(n(n−1))}`.
pub fn separation_lower_bound(f: &UniPoly) -> Result<f64, AnalysisError> {
    let n = match f.degree() {
        None => return Err(AnalysisError::ZeroPolynomial),
        Some(d) if d < 2 => return Err(AnalysisError::DegreeTooSmall(2)),
        Some(d) => d,
    };
    let fm = MultiPoly::from_uni(f, 1, 0);
    let res = crate::resultant::resultant(&fm, &fm.derivative(0), 0)
        .expect("degree >= 2")
        .constant_term();
    if res.is_zero() {
        return Err(AnalysisError::NotSquarefree);
    }
    let ln_res = crate::arith::ln_big(&res);
    let ln_lead = crate::arith::ln_big(&f.lead());
    let e = (ln_res - (2 * n - 1) as f64 * ln_lead) / (n * (n - 1)) as f64;
    Ok(e.exp())
}
