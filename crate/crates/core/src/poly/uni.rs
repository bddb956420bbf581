use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial `a_0 + a_1 x + … + a_n x^n` with the
/// leading coefficient nonzero (empty vector for zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    c: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(a: BigInt) -> Self {
        Self::new(vec![a])
    }

    /// `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `∏ (x − r)`.
    pub fn from_roots(roots: &[BigInt]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            &acc * &UniPoly::new(vec![-r.clone(), BigInt::one()])
        })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.c
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.c.iter().rev().fold(BigRational::zero(), |acc, a| {
            acc * x + BigRational::from_integer(a.clone())
        })
    }

    /// Sign of `f(p/q)` for `q > 0`, computed homogeneously in integers.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let p = x.numer();
        let q = x.denom();
        let n = self.c.len();
        if n == 0 {
            return 0;
        }
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        // Σ a_i p^i q^{n-1-i}, Horner in p with growing powers of q.
        for a in self.c.iter().rev() {
            acc = acc * p + a * &qpow;
            qpow *= q;
        }
        crate::arith::sign_of(&acc)
    }

    pub fn height(&self) -> BigInt {
        self.c.iter().map(|a| a.abs()).max().unwrap_or_default()
    }

    pub fn norm2_sq(&self) -> BigInt {
        self.c.iter().map(|a| a * a).sum()
    }

    pub fn l1_norm(&self) -> BigInt {
        self.c.iter().map(|a| a.abs()).sum()
    }

    pub fn derivative(&self) -> UniPoly {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scalar_mul(&self, k: &BigInt) -> UniPoly {
        Self::new(self.c.iter().map(|a| a * k).collect())
    }

    pub fn div_integer(&self, k: &BigInt) -> Option<UniPoly> {
        let mut out = Vec::with_capacity(self.c.len());
        for a in &self.c {
            let (q, r) = a.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        self.div_integer(&g).expect("content divides")
    }

    /// `x ↦ x·k` applied to the variable: coefficients `a_i k^i`.
    pub fn scale_var(&self, k: &BigInt) -> UniPoly {
        let mut pow = BigInt::one();
        let mut out = Vec::with_capacity(self.c.len());
        for a in &self.c {
            out.push(a * &pow);
            pow *= k;
        }
        Self::new(out)
    }

    /// Pseudo-division: `lc(g)^{δ+1}·self = q·g + r` with `δ = deg self − deg g`.
    pub fn pseudo_divrem(&self, g: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!g.is_zero(), "division by zero polynomial");
        let dg = g.degree().unwrap();
        let df = match self.degree() {
            Some(d) if d >= dg => d,
            _ => return (UniPoly::zero(), self.clone()),
        };
        let lc = g.lead();
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); df - dg + 1];
        for k in (0..=df - dg).rev() {
            let top = r[k + dg].clone();
            for qi in q.iter_mut() {
                *qi *= &lc;
            }
            q[k] += &top;
            for ri in r.iter_mut() {
                *ri *= &lc;
            }
            for (j, gj) in g.c.iter().enumerate() {
                r[k + j] -= &top * gj;
            }
        }
        r.truncate(dg);
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient in ℤ[x], `None` when `g` does not divide `self`.
    pub fn div_exact(&self, g: &UniPoly) -> Option<UniPoly> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let dg = g.degree().unwrap();
        let df = self.degree()?;
        if df < dg {
            return None;
        }
        let lc = g.lead();
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); df - dg + 1];
        for k in (0..=df - dg).rev() {
            let (qk, rem) = r[k + dg].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, gj) in g.c.iter().enumerate() {
                r[k + j] -= &qk * gj;
            }
            q[k] = qk;
        }
        if r.iter().all(Zero::is_zero) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Greatest common divisor, normalized to positive leading
    /// coefficient and carrying the gcd of the contents.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.primitive().scalar_mul(&other.content());
        }
        if other.is_zero() {
            return self.primitive().scalar_mul(&self.content());
        }
        let cont = self.content().gcd(&other.content());
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.pseudo_divrem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scalar_mul(&cont)
    }

    /// `self / gcd(self, self')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative()).primitive();
        self.primitive().div_exact(&g).expect("gcd divides").primitive()
    }

    /// Squarefree decomposition of the primitive part:
    /// `[(g_1, 1), (g_2, 2), …]` with `prim(self) = ∏ g_i^i`, each `g_i`
    /// squarefree and primitive; trivial factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let f = self.primitive();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut a = f.gcd(&f.derivative()).primitive();
        let mut b = f.div_exact(&a).expect("gcd divides").primitive();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let c = a.gcd(&b).primitive();
            let g = b.div_exact(&c).expect("gcd divides").primitive();
            if g.degree().unwrap_or(0) > 0 {
                out.push((g, i));
            }
            a = a.div_exact(&c).expect("gcd divides").primitive();
            b = c;
            i += 1;
        }
        out
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.c.iter().map(|a| -a).collect())
    }
}

impl UniPoly {
    pub fn pow(&self, k: u32) -> UniPoly {
        (0..k).fold(UniPoly::one(), |acc, _| &acc * self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = crate::poly::MultiPoly::from_uni(self, 1, 0);
        write!(f, "{m}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(u(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(u(&[0, 0]).is_zero());
        assert_eq!(u(&[0]).degree(), None);
    }

    #[test]
    fn eval_and_sign() {
        let f = u(&[90, -48, 6]);
        assert_eq!(f.eval(&BigInt::from(3)), BigInt::zero());
        assert_eq!(f.eval(&BigInt::from(5)), BigInt::zero());
        let half = BigRational::new(7.into(), 2.into());
        assert_eq!(f.sign_at(&half), -1);
        assert_eq!(f.sign_at(&BigRational::from_integer(0.into())), 1);
        assert_eq!(f.eval_rational(&half), BigRational::new((-9).into(), 2.into()));
    }

    #[test]
    fn pseudo_division_identity() {
        let f = u(&[3, -1, 0, 5, 2]);
        let g = u(&[1, 0, 3]);
        let (q, r) = f.pseudo_divrem(&g);
        let k = g.lead().pow(3);
        assert_eq!(&(&q * &g) + &r, f.scalar_mul(&k));
        assert!(r.degree() < g.degree());
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = UniPoly::from_roots(&[1.into(), 2.into(), (-3).into()]);
        let b = UniPoly::from_roots(&[2.into(), 5.into()]);
        assert_eq!(a.gcd(&b), u(&[-2, 1]));
        assert_eq!((&a * &b).div_exact(&a).unwrap(), b);
        assert!(a.div_exact(&b).is_none());
        assert_eq!(u(&[2, 4]).gcd(&u(&[6, 12])), u(&[2, 4]));
    }

    #[test]
    fn squarefree() {
        let f = u(&[1, -2, 1]);
        assert_eq!(f.squarefree_part(), u(&[-1, 1]));
        let g = &UniPoly::from_roots(&[1.into(), 1.into(), 1.into(), 2.into()]).scalar_mul(&3.into()) * &u(&[1, 0, 1]);
        assert_eq!(g.squarefree_part(), &u(&[-1, 1]) * &(&u(&[-2, 1]) * &u(&[1, 0, 1])));
        let dec = g.squarefree_decomposition();
        let mut rebuilt = UniPoly::one();
        for (h, i) in &dec {
            rebuilt = &rebuilt * &h.pow(*i);
        }
        assert_eq!(rebuilt, g.primitive());
        assert_eq!(dec.iter().map(|(_, i)| *i).collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn display() {
        assert_eq!(u(&[90, -48, 6]).to_string(), "6*x^2 - 48*x + 90");
    }
}
