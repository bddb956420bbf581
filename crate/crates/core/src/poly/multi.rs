use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{PolyError, UniPoly};

/// Exponent vector. Ordered graded-lexicographically: total degree
/// first, then lexicographic with `x > y > z > w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when every exponent allows it.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact integer coefficients and a fixed arity.
/// The zero polynomial is the empty term map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(Monomial::one(arity), c.into());
        p
    }

    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable index out of range");
        let mut p = Self::zero(arity);
        p.add_term(Monomial::var(arity, i), BigInt::one());
        p
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(m.arity());
        p.add_term(m, c.into());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; like
    /// terms are combined and zeros dropped.
    pub fn from_terms<I, C>(arity: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(PolyError::ArityMismatch {
                    expected: arity,
                    found: e.len(),
                });
            }
            p.add_term(Monomial(e), c.into());
        }
        Ok(p)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert_eq!(m.arity(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one(self.arity))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in variable `v`; `None` for the zero polynomial.
    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Variables occurring with positive degree.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.arity)
            .filter(|&v| self.terms.keys().any(|m| m.0[v] > 0))
            .collect()
    }

    fn check_arity(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                found: point.len(),
            });
        }
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Max absolute coefficient; 0 for the zero polynomial.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Sum of squared coefficients.
    pub fn norm2_sq(&self) -> BigInt {
        self.terms.values().map(|c| c * c).sum()
    }

    /// `f(x·X, y·Y, …)`.
    pub fn scale_vars(&self, bounds: &[BigInt]) -> Result<MultiPoly, PolyError> {
        if bounds.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                found: bounds.len(),
            });
        }
        if bounds.iter().any(|b| !b.is_positive()) {
            return Err(PolyError::NonPositiveBound);
        }
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * monomial_value(m, bounds));
        }
        Ok(out)
    }

    /// Positive gcd of the coefficients together with the primitive part.
    pub fn content_and_primitive(&self) -> Result<(BigInt, MultiPoly), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let g = self.content();
        Ok((g.clone(), self.div_integer(&g).expect("content divides")))
    }

    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scalar_mul(&self, k: &BigInt) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * k))
                .collect(),
        }
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_integer(&self, k: &BigInt) -> Option<MultiPoly> {
        if k.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(MultiPoly {
            arity: self.arity,
            terms,
        })
    }

    /// Reduces every coefficient into `[0, modulus)`.
    pub fn mod_coeffs(&self, modulus: &BigInt) -> MultiPoly {
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mod_floor(modulus));
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = MultiPoly::zero(self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Binary exponentiation.
    pub fn pow(&self, mut k: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::constant(self.arity, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e > 0 {
                let mut nm = m.clone();
                nm.0[v] -= 1;
                out.add_term(nm, c * BigInt::from(e));
            }
        }
        out
    }

    /// Substitutes an integer for variable `v`; the arity is kept and `v`
    /// simply no longer occurs.
    pub fn substitute(&self, v: usize, value: &BigInt) -> MultiPoly {
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.0[v];
            let mut nm = m.clone();
            nm.0[v] = 0;
            out.add_term(nm, c * num_traits::pow(value.clone(), e as usize));
        }
        out
    }

    /// Coefficients with respect to variable `v`: `self = Σ_i out[i]·v^i`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(self.arity); deg + 1];
        if self.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            let e = m.0[v] as usize;
            let mut nm = m.clone();
            nm.0[v] = 0;
            out[e].add_term(nm, c.clone());
        }
        out
    }

    /// Inverse of [`MultiPoly::coeffs_in`].
    pub fn from_coeffs_in(arity: usize, v: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(arity);
        for (i, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut nm = m.clone();
                nm.0[v] += i as u32;
                out.add_term(nm, a.clone());
            }
        }
        out
    }

    /// The univariate polynomial in `v`, if no other variable occurs.
    pub fn to_uni(&self, v: usize) -> Option<UniPoly> {
        if self
            .terms
            .keys()
            .any(|m| m.0.iter().enumerate().any(|(i, &e)| i != v && e > 0))
        {
            return None;
        }
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut c = vec![BigInt::zero(); deg + 1];
        for (m, a) in &self.terms {
            c[m.0[v] as usize] = a.clone();
        }
        Some(UniPoly::new(c))
    }

    pub fn from_uni(u: &UniPoly, arity: usize, v: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(arity);
        for (i, c) in u.coeffs().iter().enumerate() {
            let mut m = Monomial::one(arity);
            m.0[v] = i as u32;
            out.add_term(m, c.clone());
        }
        out
    }

    /// Exact division in ℤ[vars]. Returns `None` unless `divisor` divides
    /// `self` exactly.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() || self.arity != divisor.arity {
            return None;
        }
        if self.is_zero() {
            return Some(MultiPoly::zero(self.arity));
        }
        if divisor.is_constant() {
            return self.div_integer(&divisor.constant_term());
        }
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.arity);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let term = MultiPoly::monomial(qm, qc);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// Pseudo-remainder of `self` by `divisor` with respect to variable `v`.
    pub fn pseudo_rem(&self, divisor: &MultiPoly, v: usize) -> MultiPoly {
        let dv = match divisor.degree_in(v) {
            Some(d) => d,
            None => return self.clone(),
        };
        let dcoeffs = divisor.coeffs_in(v);
        let lc = dcoeffs[dv as usize].clone();
        let mut r = self.clone();
        loop {
            let dr = match r.degree_in(v) {
                Some(d) if d >= dv && !r.is_zero() => d,
                _ => break,
            };
            let lr = r.coeffs_in(v)[dr as usize].clone();
            let mut shift = Monomial::one(self.arity);
            shift.0[v] = dr - dv;
            r = &(&r * &lc) - &(&divisor.mul_monomial(&shift) * &lr);
        }
        r
    }
}

pub fn monomial_value(m: &Monomial, point: &[BigInt]) -> BigInt {
    let mut t = BigInt::one();
    for (x, &e) in point.iter().zip(&m.0) {
        if e > 0 {
            t *= num_traits::pow(x.clone(), e as usize);
        }
    }
    t
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$inner(rhs).expect("polynomial arity mismatch")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$inner(&rhs).expect("polynomial arity mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !a.is_one() || m.degree() == 0 {
                factors.push(a.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(super::var_name(v)),
                    _ => factors.push(format!("{}^{}", super::var_name(v), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse_with_arity(s, 3).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("6*x*y + 3*x + 3*y + z - 115").eval(&ints(&[3, 5, 1])).unwrap(), BigInt::zero());
        assert_eq!(p("x*y - 77").eval(&ints(&[7, 11, 0])).unwrap(), BigInt::zero());
        assert_eq!(p("x + y").eval(&ints(&[0, 0, 0])).unwrap(), BigInt::zero());
        assert!(p("x").eval(&ints(&[1, 2])).is_err());
    }

    #[test]
    fn height_and_norm() {
        let f = p("6*x*y + 3*x + 3*y + z - 115");
        assert_eq!(f.height(), BigInt::from(115));
        assert_eq!(f.norm2_sq(), BigInt::from(13280));
        assert_eq!(MultiPoly::zero(3).height(), BigInt::zero());
        assert_eq!(MultiPoly::zero(3).norm2_sq(), BigInt::zero());
        assert_eq!(p("100*x*y - 77").height(), BigInt::from(100));
        assert_eq!(p("x - 3").norm2_sq(), BigInt::from(10));
    }

    #[test]
    fn scale_examples() {
        let f = MultiPoly::parse("x*y - 77").unwrap();
        let g = f.scale_vars(&ints(&[10, 10])).unwrap();
        assert_eq!(g, MultiPoly::parse("100*x*y - 77").unwrap());
        let h = p("6*x*y + 3*x + 3*y + z - 115");
        assert_eq!(h.scale_vars(&ints(&[1, 1, 1])).unwrap(), h);
        let u = MultiPoly::parse("x - 3").unwrap();
        assert_eq!(u.scale_vars(&ints(&[4])).unwrap(), MultiPoly::parse("4*x - 3").unwrap());
        assert_eq!(u.scale_vars(&ints(&[0])), Err(PolyError::NonPositiveBound));
    }

    #[test]
    fn content_examples() {
        let (c, q) = p("12*x*y + 6*x + 6*y + 2*z - 230").content_and_primitive().unwrap();
        assert_eq!(c, BigInt::from(2));
        assert_eq!(q, p("6*x*y + 3*x + 3*y + z - 115"));
        let (c, q2) = q.content_and_primitive().unwrap();
        assert_eq!((c, &q2), (BigInt::one(), &q));
        assert_eq!(MultiPoly::zero(3).content_and_primitive(), Err(PolyError::ZeroPolynomial));
        let (c, _) = p("-4*x - 6").content_and_primitive().unwrap();
        assert_eq!(c, BigInt::from(2));
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p("x + 1") * &p("x - 1"), p("x^2 - 1"));
        let f = p("3*x*y - z + 4");
        assert!((&f + &(-&f)).is_zero());
        assert_eq!(p("x + y").pow(2), p("x^2 + 2*x*y + y^2"));
        assert_eq!(p("x + y").pow(0), p("1"));
        assert!(p("x").try_add(&MultiPoly::var(2, 0)).is_err());
    }

    #[test]
    fn exact_division() {
        let a = p("x*y + 2*z - 3");
        let b = p("x^2 - z*y + 7");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!((&prod + &p("1")).div_exact(&a).is_none());
        assert!(p("x").div_exact(&p("2")).is_none());
    }

    #[test]
    fn pseudo_remainder_of_multiple_is_zero() {
        let f = p("6*x*y + 3*x + 3*y + z - 115");
        let g = &f * &p("x*z + 5");
        assert!(g.pseudo_rem(&f, 2).is_zero());
        assert!(!p("x + z").pseudo_rem(&f, 2).is_zero());
    }

    #[test]
    fn substitution_and_coeffs() {
        let f = p("6*x*y + 3*x + 3*y + z - 115");
        let g = f.substitute(2, &BigInt::one());
        assert_eq!(g, p("6*x*y + 3*x + 3*y - 114"));
        let cs = f.coeffs_in(1);
        assert_eq!(cs[1], p("6*x + 3"));
        assert_eq!(MultiPoly::from_coeffs_in(3, 1, &cs), f);
    }

    #[test]
    fn display_order() {
        let f = p("z + 3*y - 115 + 3*x + 6*y*x");
        assert_eq!(f.to_string(), "6*x*y + 3*x + 3*y + z - 115");
        assert_eq!(p("-x^2*z + 1").to_string(), "-x^2*z + 1");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
    }
}
