//! Exact evaluators for the small-root size conditions. Every verdict is
//! an integer comparison after clearing denominators; the reported
//! margins are approximate `log₂(RHS/LHS)` values.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{RootBounds, ShiftSets, SmallRootsError};
use crate::arith::log2_big;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub holds: bool,
    /// Approximate `log₂(RHS) − log₂(LHS)`.
    pub log2_margin: f64,
}

fn check_w(w: &BigInt) -> Result<(), SmallRootsError> {
    if *w < BigInt::from(2) {
        return Err(SmallRootsError::HeightTooSmall);
    }
    Ok(())
}

fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("exponent fits in u64")
}

fn pow(b: &BigInt, e: u64) -> BigInt {
    Pow::pow(b, e)
}

/// `X^{s1}·Y^{s2}·Z^{s3} < W^s·2^{−(6+c)(d1²+d2²+d3²)s}`.
pub fn bound_general(
    bounds: &RootBounds,
    w: &BigInt,
    sets: &ShiftSets,
    dims: (u32, u32, u32),
    c_slack: &BigRational,
) -> Result<BoundVerdict, SmallRootsError> {
    check_w(w)?;
    if c_slack.is_negative() {
        return Err(SmallRootsError::InvalidParams("c_slack must be >= 0".into()));
    }
    let dsq = (dims.0 * dims.0 + dims.1 * dims.1 + dims.2 * dims.2) as u64;
    let s = sets.s as u64;
    let (a, b) = (to_u64(c_slack.numer()), to_u64(c_slack.denom()));
    let lhs = pow(&bounds.x, sets.s1) * pow(&bounds.y, sets.s2) * pow(&bounds.z, sets.s3);
    // (lhs)^b · 2^{(6b + a)·D·s} < W^{s·b}
    let two_exp = (6 * b + a) * dsq * s;
    let holds = (pow(&lhs, b) << two_exp) < pow(w, s * b);
    let c = c_slack.to_f64().unwrap_or(0.0);
    let log2_margin = s as f64 * log2_big(w) - (6.0 + c) * (dsq * s) as f64 - log2_big(&lhs);
    Ok(BoundVerdict { holds, log2_margin })
}

/// Whether `(t−s)² ≤ c·s·(d1²+d2²+d3²)` holds for the sets.
pub fn general_slack_holds(sets: &ShiftSets, dims: (u32, u32, u32), c_slack: &BigRational) -> bool {
    let dsq = (dims.0 * dims.0 + dims.1 * dims.1 + dims.2 * dims.2) as i64;
    let diff = BigInt::from(sets.t_card as i64 - sets.s as i64);
    let lhs = BigRational::from_integer(&diff * &diff);
    lhs <= c_slack * BigRational::from_integer(BigInt::from(sets.s as i64 * dsq))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `X^{3+3τ}·Y^{3+6τ+3τ²}·Z^{2+3τ} < W^{2+3τ−ε}`, compared exactly after
/// raising both sides to the common denominator of the exponents.
pub fn bound_ernst(
    bounds: &RootBounds,
    w: &BigInt,
    tau: &BigRational,
    eps: &BigRational,
) -> Result<BoundVerdict, SmallRootsError> {
    check_w(w)?;
    if tau.is_negative() {
        return Err(SmallRootsError::InvalidParams("tau must be >= 0".into()));
    }
    let ex = rat(3) + rat(3) * tau;
    let ey = rat(3) + rat(6) * tau + rat(3) * tau * tau;
    let ez = rat(2) + rat(3) * tau;
    let ew = &ez - eps;
    if !ew.is_positive() {
        return Err(SmallRootsError::InvalidParams("eps must be < 2 + 3*tau".into()));
    }
    let l = [&ex, &ey, &ez, &ew]
        .iter()
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let int_exp = |e: &BigRational| to_u64(&(e * BigRational::from_integer(l.clone())).to_integer());
    let lhs = pow(&bounds.x, int_exp(&ex)) * pow(&bounds.y, int_exp(&ey)) * pow(&bounds.z, int_exp(&ez));
    let holds = lhs < pow(w, int_exp(&ew));
    let f = |e: &BigRational| e.to_f64().unwrap_or(f64::NAN);
    let log2_margin = f(&ew) * log2_big(w)
        - f(&ex) * log2_big(&bounds.x)
        - f(&ey) * log2_big(&bounds.y)
        - f(&ez) * log2_big(&bounds.z);
    Ok(BoundVerdict { holds, log2_margin })
}

/// Bivariate condition `XY ≤ W^{2/(3d)}`, checked as `(XY)^{3d} ≤ W²`.
pub fn bound_bivariate(x: &BigInt, y: &BigInt, w: &BigInt, d: u32) -> Result<BoundVerdict, SmallRootsError> {
    check_w(w)?;
    if d == 0 {
        return Err(SmallRootsError::InvalidParams("d must be >= 1".into()));
    }
    let xy = x * y;
    let holds = pow(&xy, 3 * d as u64) <= w * w;
    let log2_margin = 2.0 * log2_big(w) - 3.0 * d as f64 * log2_big(&xy);
    Ok(BoundVerdict { holds, log2_margin })
}

/// `|x0·y0·z0| < W^{2/(3d)}`, checked as `bound^{3d} < W²`.
pub fn bound_corollary52(prod_bound: &BigInt, w: &BigInt, d: u32) -> Result<BoundVerdict, SmallRootsError> {
    check_w(w)?;
    if d == 0 {
        return Err(SmallRootsError::InvalidParams("d must be >= 1".into()));
    }
    let holds = pow(&prod_bound.abs(), 3 * d as u64) < w * w;
    let log2_margin = 2.0 * log2_big(w) - 3.0 * d as f64 * log2_big(&prod_bound.abs().max(BigInt::one()));
    Ok(BoundVerdict { holds, log2_margin })
}

/// `(3τ²/2 + (2+3τ)δ + 3ε/2)/(2+3τ−ε)`; any `γ` strictly above it makes
/// the exponent inequality hold.
pub fn gamma_feasibility(
    tau: &BigRational,
    delta: &BigRational,
    eps: &BigRational,
) -> Result<BigRational, SmallRootsError> {
    let two_3tau = rat(2) + rat(3) * tau;
    let den = &two_3tau - eps;
    if !den.is_positive() {
        return Err(SmallRootsError::InvalidParams("eps must be < 2 + 3*tau".into()));
    }
    let half = BigRational::new(1.into(), 2.into());
    let num = rat(3) * tau * tau * &half + &two_3tau * delta + rat(3) * eps * &half;
    Ok(num / den)
}

impl RootBounds {
    pub fn is_trivial(&self) -> bool {
        self.x.is_one() && self.y.is_one() && self.z.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiPoly;
    use crate::smallroots::{admissible_sets, LatticeParams};

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn rb(x: u64, y: u64, z: u64) -> RootBounds {
        RootBounds::new(x.into(), y.into(), z.into()).unwrap()
    }

    fn toy_sets(mult: u32, tau: BigRational) -> ShiftSets {
        let f = MultiPoly::parse("6*x*y + 3*x + 3*y + z - 115").unwrap();
        admissible_sets(&f, &LatticeParams::new(mult, tau, r(1, 100)).unwrap()).unwrap()
    }

    #[test]
    fn general_examples() {
        let sets = toy_sets(1, r(0, 1));
        let v = bound_general(&rb(1, 1, 1), &BigInt::from(2), &sets, (1, 1, 1), &r(0, 1)).unwrap();
        assert!(!v.holds);
        assert!((v.log2_margin + 17.0).abs() < 1e-9);
        let w = BigInt::one() << 100;
        assert!(bound_general(&rb(2, 2, 2), &w, &sets, (1, 1, 1), &r(0, 1)).unwrap().holds);
        assert_eq!(
            bound_general(&rb(1, 1, 1), &BigInt::one(), &sets, (1, 1, 1), &r(0, 1)),
            Err(SmallRootsError::HeightTooSmall)
        );
        // (5 − 1)² = 16 ≤ c·1·3 needs c ≥ 16/3.
        assert!(!general_slack_holds(&sets, (1, 1, 1), &r(5, 1)));
        assert!(general_slack_holds(&sets, (1, 1, 1), &r(16, 3)));
    }

    #[test]
    fn general_rational_slack_matches_integer_case() {
        let sets = toy_sets(1, r(0, 1));
        let w = BigInt::one() << 40;
        // c = 2/2 behaves as c = 1: LHS 1 vs 2^{40 − 21}.
        let a = bound_general(&rb(1, 1, 1), &w, &sets, (1, 1, 1), &r(2, 2)).unwrap();
        assert!(a.holds);
        // With W = 2^21 the right side is exactly 1, so strictness fails.
        let b = bound_general(&rb(1, 1, 1), &(BigInt::one() << 21), &sets, (1, 1, 1), &r(1, 1)).unwrap();
        assert!(!b.holds);
    }

    #[test]
    fn ernst_examples() {
        let eps = r(1, 100);
        assert!(bound_ernst(&rb(1, 1, 1), &BigInt::from(2), &r(0, 1), &eps).unwrap().holds);
        // N = 2^48.
        let half: BigInt = BigInt::one() << 24;
        // W = N^{3/2 + 1/4} = 2^{84}.
        let w = BigInt::one() << 84;
        let b = RootBounds::new(half.clone(), half.clone(), 2.into()).unwrap();
        let v = bound_ernst(&b, &w, &r(0, 1), &eps).unwrap();
        assert!(v.holds);
        // γ = 0: W = N^{3/2}, τ = 1.
        let w0 = BigInt::one() << 72;
        assert!(!bound_ernst(&b, &w0, &r(1, 1), &eps).unwrap().holds);
        assert!(bound_ernst(&b, &w, &r(0, 1), &r(2, 1)).is_err());
    }

    #[test]
    fn ernst_matches_float_oracle_off_the_boundary() {
        for (x, y, z, wbits, tn, td) in [(3u64, 5, 2, 20u32, 1i64, 4i64), (100, 100, 3, 60, 1, 2), (1000, 7, 9, 40, 0, 1)] {
            let w = BigInt::one() << wbits;
            let tau = r(tn, td);
            let v = bound_ernst(&rb(x, y, z), &w, &tau, &r(1, 10)).unwrap();
            let t = tn as f64 / td as f64;
            let m = (2.0 + 3.0 * t - 0.1) * wbits as f64
                - (3.0 + 3.0 * t) * (x as f64).log2()
                - (3.0 + 6.0 * t + 3.0 * t * t) * (y as f64).log2()
                - (2.0 + 3.0 * t) * (z as f64).log2();
            assert!((v.log2_margin - m).abs() < 1e-9);
            assert_eq!(v.holds, m > 0.0);
        }
    }

    #[test]
    fn bivariate_examples() {
        assert!(bound_bivariate(&2.into(), &2.into(), &BigInt::from(64), 1).unwrap().holds);
        assert!(!bound_bivariate(&64.into(), &64.into(), &BigInt::from(64), 1).unwrap().holds);
        assert!(bound_bivariate(&2.into(), &2.into(), &BigInt::from(64), 0).is_err());
    }

    #[test]
    fn corollary_examples() {
        assert!(bound_corollary52(&BigInt::one(), &BigInt::from(2), 1).unwrap().holds);
        assert!(!bound_corollary52(&BigInt::from(77), &BigInt::from(77), 1).unwrap().holds);
        assert!(!bound_corollary52(&BigInt::from(10), &BigInt::from(1000), 2).unwrap().holds);
        assert!(bound_corollary52(&BigInt::from(9), &BigInt::from(1000), 2).unwrap().holds);
        assert!(bound_corollary52(&BigInt::one(), &BigInt::from(2), 0).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_feasibility(&r(1, 1), &r(0, 1), &r(0, 1)).unwrap(), r(3, 10));
        assert_eq!(gamma_feasibility(&r(0, 1), &r(0, 1), &r(0, 1)).unwrap(), r(0, 1));
        let small = r(1, 1_000_000);
        assert!(gamma_feasibility(&small, &small, &small).unwrap() < r(1, 100_000));
        assert!(gamma_feasibility(&r(1, 1), &r(0, 1), &r(5, 1)).is_err());
    }
}
