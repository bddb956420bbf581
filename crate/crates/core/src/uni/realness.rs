//! Realness tests (Laguerre at `z = i`, Hermite expansion) and the
//! Murty prime-value irreducibility test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{numeric_roots, AnalysisError, DEFAULT_TOL};
use crate::arith::{factorial, primality, Primality};
use crate::poly::UniPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaguerreVerdict {
    pub all_real: bool,
    /// `f′(i) = 0`: the exact step is undefined and the numeric oracle
    /// decided.
    pub oracle_fallback: bool,
}

/// `f(i) = A + Bi` with integer parts.
fn eval_at_i(f: &UniPoly) -> (BigInt, BigInt) {
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (k, a) in f.coeffs().iter().enumerate() {
        match k % 4 {
            0 => re += a,
            1 => im += a,
            2 => re -= a,
            _ => im -= a,
        }
    }
    (re, im)
}

/// One Laguerre step from `z = i`: `ẑ = i − n·f(i)/f′(i)`; the verdict is
/// `Im(i)·Im(ẑ) < 0`, evaluated exactly in Gaussian rationals.
pub fn laguerre_all_real(f: &UniPoly) -> Result<LaguerreVerdict, AnalysisError> {
    let n = match f.degree() {
        None => return Err(AnalysisError::ZeroPolynomial),
        Some(d) if d < 2 => return Err(AnalysisError::DegreeTooSmall(2)),
        Some(d) => d,
    };
    if f.squarefree_part().degree() != Some(n) {
        return Err(AnalysisError::NotSquarefree);
    }
    let (a, b) = eval_at_i(f);
    let (c, d) = eval_at_i(&f.derivative());
    let den = &c * &c + &d * &d;
    if den.is_zero() {
        if a.is_zero() && b.is_zero() {
            // i is a root, so not every root is real.
            return Ok(LaguerreVerdict {
                all_real: false,
                oracle_fallback: false,
            });
        }
        let roots = numeric_roots(f, DEFAULT_TOL)?;
        return Ok(LaguerreVerdict {
            all_real: roots.iter().all(|r| r.im.abs() < 1e-6),
            oracle_fallback: true,
        });
    }
    // Im ẑ = 1 − n·(BC − AD)/(C² + D²).
    let im_num = &den - BigInt::from(n) * (&b * &c - &a * &d);
    Ok(LaguerreVerdict {
        all_real: im_num.is_negative(),
        oracle_fallback: false,
    })
}

/// Physicists' Hermite polynomial `H_k` via `H_{k+1} = 2x·H_k − 2k·H_{k−1}`.
fn hermite_poly(k: usize) -> UniPoly {
    let mut h0 = UniPoly::one();
    if k == 0 {
        return h0;
    }
    let mut h1 = UniPoly::from_i64(&[0, 2]);
    let two_x = UniPoly::from_i64(&[0, 2]);
    for j in 1..k {
        let next = &(&two_x * &h1) - &h0.scalar_mul(&BigInt::from(2 * j));
        h0 = h1;
        h1 = next;
    }
    h1
}

/// Coefficients `b_0..b_n` with `f = Σ b_k H_k`.
pub fn hermite_coefficients(f: &UniPoly) -> Vec<BigRational> {
    let n = match f.degree() {
        None => return Vec::new(),
        Some(n) => n,
    };
    let mut rest: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|a| BigRational::from_integer(a.clone()))
        .collect();
    let mut b = vec![BigRational::zero(); n + 1];
    for k in (0..=n).rev() {
        let hk = hermite_poly(k);
        let bk = &rest[k] / BigRational::from_integer(hk.lead());
        for (i, h) in hk.coeffs().iter().enumerate() {
            rest[i] -= &bk * BigRational::from_integer(h.clone());
        }
        b[k] = bk;
    }
    b
}

/// One-sided test: `Σ_{k≤n−2} 2^k·k!·b_k² < 2²·(n−1)!·b_n²` implies `n`
/// distinct real roots.
pub fn hermite_real_root_test(f: &UniPoly) -> Result<bool, AnalysisError> {
    let n = match f.degree() {
        None => return Err(AnalysisError::ZeroPolynomial),
        Some(d) if d < 2 => return Err(AnalysisError::DegreeTooSmall(2)),
        Some(d) => d,
    };
    let b = hermite_coefficients(f);
    let mut lhs = BigRational::zero();
    for (k, bk) in b.iter().enumerate().take(n - 1) {
        let w = (BigInt::one() << k) * factorial(k as u64);
        lhs += BigRational::from_integer(w) * bk * bk;
    }
    let rhs = BigRational::from_integer(BigInt::from(4) * factorial(n as u64 - 1)) * &b[n] * &b[n];
    Ok(lhs < rhs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MurtyOutcome {
    /// `f(t)` is prime (or probable prime above 2^64) at `t`.
    Irreducible {
        t: BigInt,
        value: BigInt,
        primality: Primality,
    },
    Inconclusive,
}

/// Tries `t = ⌈H⌉ + 2, …, search_limit` with `H = max |a_i/a_n|` and
/// reports the first prime value `f(t)`.
pub fn murty_irreducibility(f: &UniPoly, search_limit: u64) -> Result<MurtyOutcome, AnalysisError> {
    let n = match f.degree() {
        None => return Err(AnalysisError::ZeroPolynomial),
        Some(0) => return Err(AnalysisError::DegreeTooSmall(1)),
        Some(n) => n,
    };
    let lead = f.lead();
    if !lead.is_positive() {
        return Err(AnalysisError::NegativeLeadingCoefficient);
    }
    let h = f.coeffs()[..n]
        .iter()
        .map(|a| BigRational::new(a.abs(), lead.clone()))
        .max()
        .unwrap_or_else(BigRational::zero);
    let start = h.ceil().to_integer() + 2;
    let limit = BigInt::from(search_limit);
    let mut t = start;
    while t <= limit {
        let v = f.eval(&t);
        let p = primality(&v);
        if p.is_prime() {
            return Ok(MurtyOutcome::Irreducible {
                t,
                value: v,
                primality: p,
            });
        }
        t += 1;
    }
    Ok(MurtyOutcome::Inconclusive)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn laguerre_examples() {
        let v = laguerre_all_real(&u(&[2, -3, 1])).unwrap();
        assert!(v.all_real && !v.oracle_fallback);
        assert!(!laguerre_all_real(&u(&[1, 0, 1])).unwrap().all_real);
        assert!(!laguerre_all_real(&u(&[1, 1, 1])).unwrap().all_real);
        assert_eq!(laguerre_all_real(&u(&[1, -2, 1])), Err(AnalysisError::NotSquarefree));
        assert!(laguerre_all_real(&u(&[1, 1])).is_err());
    }

    #[test]
    fn laguerre_exact_step_value() {
        // x^2 - 3x + 2: ẑ = (18 − i)/13.
        let (a, b) = eval_at_i(&u(&[2, -3, 1]));
        assert_eq!((a, b), (BigInt::from(1), BigInt::from(-3)));
        let (c, d) = eval_at_i(&u(&[-3, 2]));
        assert_eq!((c, d), (BigInt::from(-3), BigInt::from(2)));
    }

    #[test]
    fn hermite_expansion() {
        assert_eq!(hermite_poly(3), u(&[0, -12, 0, 8]));
        assert_eq!(hermite_coefficients(&u(&[10, 0, 1])), vec![rat(21, 2), rat(0, 1), rat(1, 4)]);
        assert_eq!(hermite_coefficients(&u(&[-1, 0, 1])), vec![rat(-1, 2), rat(0, 1), rat(1, 4)]);
    }

    #[test]
    fn hermite_examples() {
        assert!(hermite_real_root_test(&u(&[-2, 0, 4])).unwrap());
        assert!(!hermite_real_root_test(&u(&[10, 0, 1])).unwrap());
        // x^2 - 1: both sides equal 1/4, so the strict test does not fire.
        assert!(!hermite_real_root_test(&u(&[-1, 0, 1])).unwrap());
        // 4x^2 - 3 fires: b_0 = -1, lhs 1 < rhs 4.
        assert!(hermite_real_root_test(&u(&[-3, 0, 4])).unwrap());
    }

    #[test]
    fn murty_examples() {
        match murty_irreducibility(&u(&[1, 1, 1]), 100).unwrap() {
            MurtyOutcome::Irreducible { t, value, .. } => {
                assert_eq!((t, value), (BigInt::from(3), BigInt::from(13)));
            }
            o => panic!("{o:?}"),
        }
        match murty_irreducibility(&u(&[1, 0, 1]), 100).unwrap() {
            MurtyOutcome::Irreducible { t, value, .. } => {
                assert_eq!((t, value), (BigInt::from(4), BigInt::from(17)));
            }
            o => panic!("{o:?}"),
        }
        assert_eq!(murty_irreducibility(&u(&[-1, 0, 1]), 1000).unwrap(), MurtyOutcome::Inconclusive);
        assert!(murty_irreducibility(&u(&[1, -1]), 10).is_err());
    }
}
