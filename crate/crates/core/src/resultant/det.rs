//! Fraction-free determinants over ℤ and ℤ[vars], and an
//! evaluation-interpolation route for univariate entries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::poly::{MultiPoly, UniPoly};

/// Ring elements with exact division, enough for Bareiss elimination.
pub trait BareissRing: Clone {
    fn is_zero_elt(&self) -> bool;
    fn one_like(&self) -> Self;
    fn mul_elt(&self, o: &Self) -> Self;
    fn sub_elt(&self, o: &Self) -> Self;
    fn neg_elt(&self) -> Self;
    fn div_exact_elt(&self, o: &Self) -> Self;
}

impl BareissRing for BigInt {
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn mul_elt(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_elt(&self, o: &Self) -> Self {
        self - o
    }
    fn neg_elt(&self) -> Self {
        -self
    }
    fn div_exact_elt(&self, o: &Self) -> Self {
        let (q, r) = num_integer::Integer::div_rem(self, o);
        debug_assert!(r.is_zero(), "Bareiss division must be exact");
        q
    }
}

impl BareissRing for MultiPoly {
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
    fn one_like(&self) -> Self {
        MultiPoly::constant(self.arity(), 1)
    }
    fn mul_elt(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_elt(&self, o: &Self) -> Self {
        self - o
    }
    fn neg_elt(&self) -> Self {
        -self
    }
    fn div_exact_elt(&self, o: &Self) -> Self {
        self.div_exact(o).expect("Bareiss division must be exact")
    }
}

/// Bareiss elimination; `zero` is returned for the empty or singular case.
pub fn det_bareiss<T: BareissRing>(m: &[Vec<T>], zero: T) -> T {
    let n = m.len();
    if n == 0 {
        return zero.one_like();
    }
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut negate = false;
    let mut prev = zero.one_like();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero_elt() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero_elt()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return zero,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul_elt(&a[k][k]).sub_elt(&a[i][k].mul_elt(&a[k][j]));
                a[i][j] = t.div_exact_elt(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg_elt()
    } else {
        d
    }
}

pub fn det_integer(m: &[Vec<BigInt>]) -> BigInt {
    det_bareiss(m, BigInt::zero())
}

/// Upper bound on the degree of `det m` in variable `v`.
pub fn det_degree_bound(m: &[Vec<MultiPoly>], v: usize) -> u32 {
    let deg = |p: &MultiPoly| p.degree_in(v).unwrap_or(0);
    let rows: u32 = m.iter().map(|r| r.iter().map(deg).max().unwrap_or(0)).sum();
    let n = m.len();
    let cols: u32 = (0..n)
        .map(|j| m.iter().map(|r| deg(&r[j])).max().unwrap_or(0))
        .sum();
    rows.min(cols)
}

/// Determinant of a matrix whose entries involve only variable `v`
/// (arity `arity`), by evaluating at `D + 1` integer points and
/// interpolating exactly.
pub fn det_interpolate(m: &[Vec<MultiPoly>], v: usize, arity: usize) -> MultiPoly {
    let d = det_degree_bound(m, v) as i64;
    let points: Vec<i64> = (0..=d).collect();
    let values: Vec<BigInt> = points
        .par_iter()
        .map(|&x| {
            let xb = BigInt::from(x);
            let im: Vec<Vec<BigInt>> = m
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|p| p.substitute(v, &xb).constant_term())
                        .collect()
                })
                .collect();
            det_integer(&im)
        })
        .collect();
    let u = interpolate(&points, &values);
    MultiPoly::from_uni(&u, arity, v)
}

/// Newton interpolation through integer points; the result must have
/// integer coefficients.
pub fn interpolate(xs: &[i64], ys: &[BigInt]) -> UniPoly {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let den = BigRational::from_integer(BigInt::from(xs[i] - xs[i - level]));
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    // Horner on the Newton form: accumulate coefficients in monomial basis.
    let mut acc: Vec<BigRational> = vec![BigRational::zero()];
    for i in (0..n).rev() {
        // acc = acc·(x − xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        let xi = BigRational::from_integer(BigInt::from(xs[i]));
        for (k, a) in acc.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * &xi;
        }
        next[0] += &dd[i];
        acc = next;
    }
    UniPoly::new(
        acc.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "interpolated determinant must be integral");
                c.to_integer()
            })
            .collect(),
    )
}
