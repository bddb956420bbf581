//! Sturm chains, exact real-root counting and isolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{root_radius, AnalysisError};
use crate::poly::UniPoly;

/// Closed interval with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn from_ints(lo: i64, hi: i64) -> Self {
        Self::new(
            BigRational::from_integer(lo.into()),
            BigRational::from_integer(hi.into()),
        )
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Signed remainder sequence `f_0, f_1 = f_0', …` of the squarefree part.
/// Each `f_{i+1}` is a positive multiple of `−rem(f_{i−1}, f_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    pub polys: Vec<UniPoly>,
}

pub fn sturm_chain(f: &UniPoly) -> Result<SturmChain, AnalysisError> {
    if f.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(SturmChain { polys: vec![f.clone()] });
    }
    // A chain ending in a constant certifies that `f` is squarefree, which
    // saves the separate gcd in the common case.
    let chain = prs_chain(f.clone());
    if chain.last().is_some_and(|p| p.degree() == Some(0)) {
        return Ok(SturmChain { polys: chain });
    }
    let g = f.squarefree_part();
    if g.degree() == Some(0) {
        return Ok(SturmChain { polys: vec![g] });
    }
    Ok(SturmChain { polys: prs_chain(g) })
}

/// `g, g′, −prem, …` with primitive parts and Sturm signs.
fn prs_chain(g: UniPoly) -> Vec<UniPoly> {
    let g = if g.lead().is_negative() { -&g } else { g };
    let d = g.derivative().primitive();
    let mut polys = vec![g, d];
    loop {
        let n = polys.len();
        let (a, b) = (&polys[n - 2], &polys[n - 1]);
        if b.degree() == Some(0) {
            break;
        }
        let (_, r) = a.pseudo_divrem(b);
        if r.is_zero() {
            break;
        }
        let delta = a.degree().unwrap() - b.degree().unwrap();
        // prem = lc^{δ+1}·a − q·b; flip when that factor is negative.
        let scale_negative = b.lead().is_negative() && (delta + 1) % 2 == 1;
        let r = if scale_negative { r } else { -&r };
        let c = r.content();
        polys.push(r.div_integer(&c).expect("content divides"));
    }
    polys
}

impl SturmChain {
    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.polys.iter().map(|p| p.sign_at(x)))
    }

    /// Sign variations at `+∞` (`positive`) or `−∞`.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.polys.iter().map(|p| {
            let s = crate::arith::sign_of(&p.lead());
            if !positive && p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations_at(lo) - self.variations_at(hi)
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// Number of distinct real roots in `(lo, hi]`.
///
/// Sign sequences drop zero entries, so a root sitting exactly on an
/// endpoint is attributed to the interval it closes and never counted
/// twice; no endpoint perturbation is needed.
pub fn count_real_roots(f: &UniPoly, iv: &Interval) -> Result<usize, AnalysisError> {
    Ok(sturm_chain(f)?.count(&iv.lo, &iv.hi))
}

/// Number of distinct real roots on the whole line.
pub fn count_all_real_roots(f: &UniPoly) -> Result<usize, AnalysisError> {
    Ok(sturm_chain(f)?.count_all())
}

/// A split point strictly inside `(lo, hi)` that is not a root of `g`.
fn split_point(g: &UniPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let w = hi - lo;
    let mut k = 2i64;
    loop {
        for j in 1..k {
            let t = lo + &w * BigRational::new(j.into(), k.into());
            if g.sign_at(&t) != 0 {
                return t;
            }
        }
        k += 1;
    }
}

/// Disjoint closed intervals, ascending, each containing exactly one
/// distinct real root in its interior. Endpoints are never roots.
pub fn isolate_real_roots(f: &UniPoly) -> Result<Vec<Interval>, AnalysisError> {
    if f.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let chain = sturm_chain(f)?;
    let g = &chain.polys[0];
    let b = root_radius(f)?;
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count(&lo, &hi);
        match n {
            0 => {}
            1 => out.push(Interval::new(lo, hi)),
            _ => {
                let mid = split_point(g, &lo, &hi);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Shrinks an isolating interval until its width is below `width`.
pub fn refine(chain: &SturmChain, iv: &Interval, width: &BigRational) -> Interval {
    let g = &chain.polys[0];
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    while &(&hi - &lo) >= width {
        let mid = split_point(g, &lo, &hi);
        if chain.count(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Interval::new(lo, hi)
}

/// All integer roots, ascending.
pub fn integer_roots(f: &UniPoly) -> Result<Vec<BigInt>, AnalysisError> {
    if f.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let chain = sturm_chain(f)?;
    let one = BigRational::one();
    let mut out = Vec::new();
    for iv in isolate_real_roots(f)? {
        // No integer strictly inside: skip without refining.
        if iv.hi.ceil() - iv.lo.floor() < BigRational::from_integer(BigInt::from(2)) {
            continue;
        }
        let iv = refine(&chain, &iv, &one);
        let k = iv.hi.floor();
        if k > iv.lo && k < iv.hi && f.eval(k.numer()).is_zero() {
            out.push(k.to_integer());
        }
    }
    Ok(out)
}
