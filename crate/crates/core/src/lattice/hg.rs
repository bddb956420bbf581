use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::poly::MultiPoly;

/// Both readings of the Howgrave-Graham condition for `h` at scale
/// `bounds` and modulus `R`, `w` = number of terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HgVerdict {
    /// `‖h(xX,…)‖₂² · w < R²`.
    pub l2: bool,
    /// `‖h(xX,…)‖∞² · w < R²`, weaker than `l2`.
    pub linf: bool,
    #[serde(with = "crate::serde_big")]
    pub norm2_sq: BigInt,
    pub terms: usize,
}

pub fn hg_verdict(h: &MultiPoly, bounds: &[BigInt], r: &BigInt) -> HgVerdict {
    let w = h.num_terms();
    if w == 0 {
        return HgVerdict {
            l2: true,
            linf: true,
            norm2_sq: BigInt::from(0),
            terms: 0,
        };
    }
    let s = h.scale_vars(bounds).expect("bounds match the arity of h");
    let r2 = r * r;
    let wb = BigInt::from(w);
    let n2 = s.norm2_sq();
    let hi = s.height();
    HgVerdict {
        l2: &n2 * &wb < r2,
        linf: &hi * &hi * &wb < r2,
        norm2_sq: n2,
        terms: w,
    }
}

/// `‖h(xX,…)‖₂ < R/√w`: with `h(root) ≡ 0 mod R` and the root inside the
/// bounds this forces `h(root) = 0` over ℤ. The zero polynomial passes.
pub fn hg_check(h: &MultiPoly, bounds: &[BigInt], r: &BigInt) -> bool {
    hg_verdict(h, bounds, r).l2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse_with_arity(s, 1).unwrap()
    }

    #[test]
    fn examples() {
        let b = [BigInt::from(4)];
        let r = BigInt::from(100);
        assert!(hg_check(&p("x - 3"), &b, &r));
        assert_eq!(p("x - 3").eval(&[3.into()]).unwrap(), BigInt::from(0));
        assert!(!hg_check(&p("x + 97"), &b, &r));
        assert_eq!(p("x + 97").eval(&[3.into()]).unwrap(), BigInt::from(100));
        assert!(hg_check(&MultiPoly::zero(1), &b, &r));
    }

    #[test]
    fn linf_weaker_than_l2() {
        // ‖(60, 60)‖∞ = 60 < 70.7 but ‖·‖₂ ≈ 84.9.
        let v = hg_verdict(&p("15*x + 60"), &[BigInt::from(4)], &BigInt::from(100));
        assert!(v.linf && !v.l2);
        assert_eq!(v.norm2_sq, BigInt::from(7200));
    }
}
