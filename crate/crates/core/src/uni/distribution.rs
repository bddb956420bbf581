//! Angular and real-root distribution estimates.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{roots_with_multiplicity, sturm_chain, AnalysisError, DEFAULT_TOL};
use crate::poly::UniPoly;

/// Angular tolerance for treating a root as lying on a sector boundary.
const ANGLE_EPS: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErdosTuran {
    /// `|n_f[α,β]/n − (β−α)/2π|²`.
    pub lhs: f64,
    /// `2·log(Σ|a_i| / √|a_0 a_n|)`.
    pub rhs: f64,
    pub holds: bool,
    /// `rhs / n`, the sharper reading of the same inequality.
    pub rhs_over_n: f64,
    pub holds_over_n: bool,
}

fn log_ratio(f: &UniPoly) -> Result<f64, AnalysisError> {
    let c = f.coeffs();
    if c.is_empty() || c[0].is_zero() {
        return Err(AnalysisError::VanishingExtremeCoefficient);
    }
    let ln_l1 = crate::arith::ln_big(&f.l1_norm());
    let ln_ext = 0.5 * (crate::arith::ln_big(&c[0]) + crate::arith::ln_big(&f.lead()));
    Ok(ln_l1 - ln_ext)
}

/// Sector discrepancy of the roots against the Erdős–Turán bound.
///
/// Roots whose argument falls on `α` or `β` count with weight 1/2; for
/// the full circle every root counts once.
pub fn erdos_turan_defect(f: &UniPoly, alpha: f64, beta: f64) -> Result<ErdosTuran, AnalysisError> {
    let n = match f.degree() {
        None => return Err(AnalysisError::ZeroPolynomial),
        Some(0) => return Err(AnalysisError::DegreeTooSmall(1)),
        Some(n) => n,
    };
    if !(0.0 <= alpha && alpha <= beta && beta <= 2.0 * PI + 1e-12) {
        return Err(AnalysisError::InvalidAngles);
    }
    let lr = log_ratio(f)?;
    let full = beta - alpha >= 2.0 * PI - ANGLE_EPS;
    let mut count = 0.0;
    for (r, mult) in roots_with_multiplicity(f, DEFAULT_TOL)? {
        let w = if full {
            1.0
        } else {
            let mut th = r.im.atan2(r.re);
            if th < 0.0 {
                th += 2.0 * PI;
            }
            let near = |a: f64, b: f64| {
                let d = (a - b).abs();
                d < ANGLE_EPS || (2.0 * PI - d) < ANGLE_EPS
            };
            if near(th, alpha) || near(th, beta) {
                0.5
            } else if alpha < th && th < beta {
                1.0
            } else {
                0.0
            }
        };
        count += w * mult as f64;
    }
    let lhs = (count / n as f64 - (beta - alpha) / (2.0 * PI)).powi(2);
    let rhs = 2.0 * lr;
    let rhs_over_n = rhs / n as f64;
    Ok(ErdosTuran {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-12,
        rhs_over_n,
        holds_over_n: lhs <= rhs_over_n + 1e-12,
    })
}

/// `sqrt(2n·log(Σ|a_i| / √|a_0 a_n|))`, a bound on the number of
/// positive (or negative) real roots.
pub fn positive_root_count_bound(f: &UniPoly) -> Result<f64, AnalysisError> {
    let n = match f.degree() {
        None => return Err(AnalysisError::ZeroPolynomial),
        Some(n) => n,
    };
    let lr = log_ratio(f)?;
    Ok((2.0 * n as f64 * lr.max(0.0)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KacEstimate {
    pub mean: f64,
    /// `(2/π)·ln n`.
    pub asymptotic: f64,
    pub trials: u64,
    /// Total real roots over all trials.
    pub total_roots: u64,
}

/// Scale applied before rounding normal samples to integers.
const KAC_SCALE: f64 = (1u64 << 24) as f64;

/// Real roots of one random polynomial with i.i.d. standard normal
/// coefficients, trial `index` of the stream seeded by `seed`.
pub fn kac_trial(n: usize, seed: u64, index: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let coeffs: Vec<BigInt> = (0..=n)
        .map(|_| {
            let g: f64 = StandardNormal.sample(&mut rng);
            BigInt::from((g * KAC_SCALE).round().to_i64().unwrap_or(0))
        })
        .collect();
    let f = UniPoly::new(coeffs);
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    sturm_chain(&f).map(|c| c.count_all()).unwrap_or(0)
}

/// Monte-Carlo mean of the number of real roots of random degree-`n`
/// polynomials. Deterministic for a fixed seed regardless of thread count.
pub fn kac_estimate(n: usize, trials: u64, seed: u64) -> Result<KacEstimate, AnalysisError> {
    if n < 2 {
        return Err(AnalysisError::DegreeTooSmall(2));
    }
    if trials == 0 {
        return Err(AnalysisError::InvalidArgument("trials must be >= 1".into()));
    }
    let total: u64 = (0..trials)
        .into_par_iter()
        .map(|i| kac_trial(n, seed, i) as u64)
        .sum();
    Ok(KacEstimate {
        mean: total as f64 / trials as f64,
        asymptotic: 2.0 / PI * (n as f64).ln(),
        trials,
        total_roots: total,
    })
}
