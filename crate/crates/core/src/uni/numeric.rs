//! Floating-point roots by simultaneous (Durand-Kerner) iteration.
//! Used only as an oracle and for the Mahler measure.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::poly::UniPoly;

pub const DEFAULT_TOL: f64 = 1e-10;
const MAX_ITER: usize = 1000;
const RESTARTS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
    /// Radius of a disk around `(re, im)` containing a root,
    /// `n·|f(z)|/|f′(z)|` with `|f(z)|` padded by the rounding error.
    pub radius: f64,
}

impl ComplexApprox {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.z().norm()
    }
}

/// Coefficients as `f64`, rescaled by a common power of two when they
/// would overflow.
fn float_coeffs(c: &[BigInt]) -> Vec<f64> {
    let bits = c.iter().map(|a| a.bits()).max().unwrap_or(0);
    let shift = bits.saturating_sub(900);
    c.iter()
        .map(|a| (a >> shift).to_f64().unwrap_or(0.0))
        .collect()
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    let mut scale = 0.0;
    let az = z.norm();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        scale = scale * az + a.abs();
    }
    (p, dp, scale)
}

fn fujiwara_radius(monic: &[f64]) -> f64 {
    let n = monic.len() - 1;
    let mut r: f64 = 0.0;
    for k in 1..=n {
        let a = monic[n - k].abs();
        let a = if k == n { a / 2.0 } else { a };
        r = r.max(a.powf(1.0 / k as f64));
    }
    (2.0 * r).max(f64::MIN_POSITIVE)
}

fn durand_kerner(monic: &[f64], start: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = start.len();
    let mut z = start.to_vec();
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, _, _) = horner(monic, z[i]);
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-300, 0.0);
            }
            let step = p / denom;
            if !step.re.is_finite() || !step.im.is_finite() {
                return None;
            }
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-15 {
            return Some(z);
        }
    }
    Some(z)
}

/// All `n` complex roots with residual `|f(z)| ≤ tol·Σ|a_i||z|^i`.
pub fn numeric_roots(f: &UniPoly, tol: f64) -> Result<Vec<ComplexApprox>, AnalysisError> {
    let n = match f.degree() {
        None => return Err(AnalysisError::ZeroPolynomial),
        Some(0) => return Err(AnalysisError::DegreeTooSmall(1)),
        Some(n) => n,
    };
    let c = f.coeffs();
    let zeros = c.iter().take_while(|a| a.is_zero()).count();
    let mut out: Vec<ComplexApprox> = (0..zeros)
        .map(|_| ComplexApprox {
            re: 0.0,
            im: 0.0,
            radius: 0.0,
        })
        .collect();
    let rest = &c[zeros..];
    let m = n - zeros;
    if m == 0 {
        return Ok(out);
    }
    let fc = float_coeffs(rest);
    let lead = fc[m];
    let monic: Vec<f64> = fc.iter().map(|a| a / lead).collect();
    let radius = fujiwara_radius(&monic);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_d00d);
    for attempt in 0..=RESTARTS {
        let phase = if attempt == 0 { 0.4 } else { rng.random::<f64>() * 6.28 };
        let rad = if attempt == 0 {
            radius / 2.0
        } else {
            radius * (0.25 + rng.random::<f64>())
        };
        let start: Vec<Complex64> = (0..m)
            .map(|k| {
                Complex64::from_polar(rad, phase + 2.0 * std::f64::consts::PI * k as f64 / m as f64)
            })
            .collect();
        let Some(mut z) = durand_kerner(&monic, &start) else {
            continue;
        };
        for zi in z.iter_mut() {
            for _ in 0..3 {
                let (p, dp, _) = horner(&monic, *zi);
                if dp.norm() == 0.0 {
                    break;
                }
                let cand = *zi - p / dp;
                if horner(&monic, cand).0.norm() < p.norm() {
                    *zi = cand;
                } else {
                    break;
                }
            }
        }
        let ok = z.iter().all(|&zi| {
            let (p, _, scale) = horner(&monic, zi);
            p.norm() <= tol * scale.max(f64::MIN_POSITIVE)
        });
        if ok {
            out.extend(z.into_iter().map(|zi| {
                let (p, dp, scale) = horner(&monic, zi);
                // Residual plus a bound on Horner rounding error.
                let resid = p.norm() + 2.0 * (m + 1) as f64 * f64::EPSILON * scale;
                let radius = if dp.norm() == 0.0 {
                    f64::INFINITY
                } else {
                    m as f64 * resid / dp.norm()
                };
                ComplexApprox {
                    re: zi.re,
                    im: zi.im,
                    radius,
                }
            }));
            return Ok(out);
        }
    }
    Err(AnalysisError::NoConvergence(MAX_ITER))
}

/// Roots grouped by multiplicity via the squarefree decomposition, so
/// repeated roots are located on squarefree factors.
pub fn roots_with_multiplicity(
    f: &UniPoly,
    tol: f64,
) -> Result<Vec<(ComplexApprox, u32)>, AnalysisError> {
    if f.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (g, mult) in f.squarefree_decomposition() {
        for r in numeric_roots(&g, tol)? {
            out.push((r, mult));
        }
    }
    Ok(out)
}

/// `|a_n|·∏ max(1, |α|)` over the roots with multiplicity.
pub fn mahler_measure(f: &UniPoly, tol: f64) -> Result<f64, AnalysisError> {
    if f.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    let mut ln = crate::arith::ln_big(&f.lead());
    if f.degree().unwrap_or(0) > 0 {
        for (r, mult) in roots_with_multiplicity(f, tol)? {
            ln += mult as f64 * r.abs().max(1.0).ln();
        }
    }
    Ok(ln.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    fn sorted(mut v: Vec<ComplexApprox>) -> Vec<ComplexApprox> {
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    #[test]
    fn root_examples() {
        let r = sorted(numeric_roots(&u(&[-1, 0, 1]), DEFAULT_TOL).unwrap());
        assert!((r[0].re + 1.0).abs() < 1e-12 && (r[1].re - 1.0).abs() < 1e-12);
        let r = sorted(numeric_roots(&u(&[1, 0, 1]), DEFAULT_TOL).unwrap());
        assert!(r[0].re.abs() < 1e-12 && (r[0].im + 1.0).abs() < 1e-12);
        assert!((r[1].im - 1.0).abs() < 1e-12);
        let r = sorted(numeric_roots(&u(&[0, 2, -3, 1]), DEFAULT_TOL).unwrap());
        for (k, z) in r.iter().enumerate() {
            assert!((z.re - k as f64).abs() < 1e-12 && z.im.abs() < 1e-12);
        }
        assert!(numeric_roots(&u(&[3]), DEFAULT_TOL).is_err());
    }

    #[test]
    fn radius_contains_true_root() {
        let r = numeric_roots(&u(&[-6, 11, -6, 1]), DEFAULT_TOL).unwrap();
        for z in r {
            let nearest = [1.0f64, 2.0, 3.0]
                .iter()
                .map(|t| ((z.re - t).powi(2) + z.im.powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest <= z.radius);
        }
    }

    #[test]
    fn huge_coefficients() {
        let big = BigInt::from(10).pow(400);
        let f = UniPoly::new(vec![-&big * 3, big]);
        let r = numeric_roots(&f, DEFAULT_TOL).unwrap();
        assert!((r[0].re - 3.0).abs() < 1e-9);
    }

    #[test]
    fn mahler_examples() {
        let lehmer = u(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert!((mahler_measure(&lehmer, DEFAULT_TOL).unwrap() - 1.1762808).abs() < 1e-5);
        assert!((mahler_measure(&u(&[1, 1, 1]), DEFAULT_TOL).unwrap() - 1.0).abs() < 1e-12);
        assert!((mahler_measure(&u(&[-2, 1]), DEFAULT_TOL).unwrap() - 2.0).abs() < 1e-12);
        // (x^2+x+1)^3 (x+1)^2, repeated cyclotomic factors.
        let f = &u(&[1, 1, 1]).pow(3) * &u(&[1, 1]).pow(2);
        assert!((mahler_measure(&f, DEFAULT_TOL).unwrap() - 1.0).abs() < 1e-10);
        // 3(x - 5)^2 (x - 1/2 is not integral; use 2x - 1).
        let g = &u(&[-5, 1]).pow(2).scalar_mul(&BigInt::from(3)) * &u(&[-1, 2]);
        assert!((mahler_measure(&g, DEFAULT_TOL).unwrap() - 150.0).abs() < 1e-8);
    }
}
