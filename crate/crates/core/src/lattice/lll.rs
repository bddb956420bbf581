//! Integral LLL: all Gram-Schmidt data is kept as integers
//! `d_i = det Gram(b_0..b_{i-1})` and `λ_ij = d_{j+1}·μ_ij`, so every
//! step is exact without rationals.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{axpy, dot, Gso, IntBasis, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LllOutput {
    pub basis: IntBasis,
    /// Unimodular `U` with `U·input = basis`; empty when not tracked.
    pub transform: Vec<Vec<BigInt>>,
    pub swaps: u64,
}

struct State {
    b: Vec<Vec<BigInt>>,
    h: Option<Vec<Vec<BigInt>>>,
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
    swaps: u64,
}

impl State {
    fn gso_row(&mut self, k: usize) -> bool {
        for j in 0..=k {
            let mut u = dot(&self.b[k], &self.b[j]);
            for i in 0..j {
                u = (&self.d[i + 1] * &u - &self.lam[k][i] * &self.lam[j][i]) / &self.d[i];
            }
            if j < k {
                self.lam[k][j] = u;
            } else {
                if u.is_zero() {
                    return false;
                }
                self.d[k + 1] = u;
            }
        }
        true
    }

    fn red(&mut self, k: usize, l: usize) {
        let dl = &self.d[l + 1];
        if BigInt::from(2) * self.lam[k][l].abs() <= *dl {
            return;
        }
        // Nearest integer to λ/d.
        let q = (BigInt::from(2) * &self.lam[k][l] + dl).div_floor(&(BigInt::from(2) * dl));
        let bl = self.b[l].clone();
        axpy(&mut self.b[k], &q, &bl);
        if let Some(h) = self.h.as_mut() {
            let hl = h[l].clone();
            axpy(&mut h[k], &q, &hl);
        }
        self.lam[k][l] -= &q * &self.d[l + 1];
        for i in 0..l {
            let t = &q * &self.lam[l][i];
            self.lam[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.swaps += 1;
        self.b.swap(k, k - 1);
        if let Some(h) = self.h.as_mut() {
            h.swap(k, k - 1);
        }
        for j in 0..k - 1 {
            let t = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let bb = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            let nik = (&self.d[k + 1] * &self.lam[i][k - 1] - &lam * &t) / &self.d[k];
            self.lam[i][k - 1] = (&bb * &t + &lam * &nik) / &self.d[k + 1];
            self.lam[i][k] = nik;
        }
        self.d[k] = bb;
    }
}

fn check_delta(delta: &BigRational) -> Result<(), LatticeError> {
    let quarter = BigRational::new(1.into(), 4.into());
    if *delta <= quarter || *delta >= BigRational::one() {
        return Err(LatticeError::InvalidDelta);
    }
    Ok(())
}

pub fn lll_core(b: &IntBasis, delta: &BigRational, track: bool) -> Result<LllOutput, LatticeError> {
    check_delta(delta)?;
    let n = b.num_rows();
    let (p, q) = (delta.numer().clone(), delta.denom().clone());
    let dependent = || LatticeError::DependentRows { rank: b.rank(), rows: n };
    let mut st = State {
        b: b.rows().to_vec(),
        h: track.then(|| {
            (0..n)
                .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
                .collect()
        }),
        d: vec![BigInt::one(); n + 1],
        lam: vec![vec![BigInt::zero(); n]; n],
        swaps: 0,
    };
    if !st.gso_row(0) {
        return Err(dependent());
    }
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            if !st.gso_row(k) {
                return Err(dependent());
            }
        }
        st.red(k, k - 1);
        let lam = &st.lam[k][k - 1];
        let lhs = &q * &st.d[k + 1] * &st.d[k - 1];
        let rhs = &p * &st.d[k] * &st.d[k] - &q * lam * lam;
        if lhs < rhs {
            st.swap(k, kmax);
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                st.red(k, l);
            }
            k += 1;
        }
    }
    Ok(LllOutput {
        basis: IntBasis::new(st.b)?,
        transform: st.h.unwrap_or_default(),
        swaps: st.swaps,
    })
}

/// LLL-reduces independent rows with parameter `delta`, tracking the
/// unimodular transform.
pub fn lll_reduce(b: &IntBasis, delta: &BigRational) -> Result<LllOutput, LatticeError> {
    lll_core(b, delta, true)
}

/// `|μ_ij| ≤ 1/2` for all `j < i`.
pub fn size_reduced(g: &Gso) -> bool {
    let half = BigRational::new(1.into(), 2.into());
    g.mu.iter()
        .enumerate()
        .all(|(i, row)| row[..i].iter().all(|m| m.abs() <= half))
}

/// `δ‖b*_{i−1}‖² ≤ ‖b*_i‖² + μ²_{i,i−1}‖b*_{i−1}‖²` for all `i`.
pub fn lovasz_holds(g: &Gso, delta: &BigRational) -> bool {
    (1..g.norms_sq.len()).all(|i| {
        let prev = &g.norms_sq[i - 1];
        let m = &g.mu[i][i - 1];
        delta * prev <= &g.norms_sq[i] + m * m * prev
    })
}

#[cfg(test)]
mod tests {
    use super::super::gram_schmidt;
    use super::*;

    fn three_quarters() -> BigRational {
        BigRational::new(3.into(), 4.into())
    }

    fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        a.iter()
            .map(|r| {
                (0..b[0].len())
                    .map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn identity_is_fixed() {
        let b = IntBasis::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let out = lll_reduce(&b, &three_quarters()).unwrap();
        assert_eq!(out.basis, b);
        assert_eq!(out.transform, b.rows().to_vec());
    }

    #[test]
    fn two_dim_example() {
        let b = IntBasis::from_i64(&[&[201, 37], &[1648, 297]]).unwrap();
        let out = lll_reduce(&b, &three_quarters()).unwrap();
        let n1 = out.basis.row_norm_sq(0);
        // ‖b1‖⁴ ≤ 2·1279².
        assert!(&n1 * &n1 <= BigInt::from(2 * 1279 * 1279));
        // Exhaustive shortest vector over small combinations.
        let mut best: Option<i64> = None;
        for a in -60i64..=60 {
            for c in -60i64..=60 {
                if a == 0 && c == 0 {
                    continue;
                }
                let v = (a * 201 + c * 1648, a * 37 + c * 297);
                let ns = v.0 * v.0 + v.1 * v.1;
                best = Some(best.map_or(ns, |b| b.min(ns)));
            }
        }
        assert_eq!(n1, BigInt::from(best.unwrap()));
        assert_eq!(out.basis.abs_det().unwrap(), BigInt::from(1279));
        assert_eq!(mat_mul(&out.transform, b.rows()), out.basis.rows().to_vec());
    }

    #[test]
    fn postconditions_on_fixed_basis() {
        let b = IntBasis::from_i64(&[
            &[1, 0, 0, 0, 31415],
            &[0, 1, 0, 0, 92653],
            &[0, 0, 1, 0, 58979],
            &[0, 0, 0, 1, 32384],
            &[0, 0, 0, 0, 100000],
        ])
        .unwrap();
        let out = lll_reduce(&b, &three_quarters()).unwrap();
        let g = gram_schmidt(&out.basis).unwrap();
        assert!(size_reduced(&g));
        assert!(lovasz_holds(&g, &three_quarters()));
        assert_eq!(out.basis.abs_det(), b.abs_det());
        assert_eq!(mat_mul(&out.transform, b.rows()), out.basis.rows().to_vec());
    }

    #[test]
    fn errors() {
        let dep = IntBasis::from_i64(&[&[1, 2, 3], &[2, 4, 6]]).unwrap();
        assert!(matches!(
            lll_reduce(&dep, &three_quarters()),
            Err(LatticeError::DependentRows { rank: 1, rows: 2 })
        ));
        let b = IntBasis::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(lll_reduce(&b, &BigRational::new(1.into(), 4.into())), Err(LatticeError::InvalidDelta));
        assert_eq!(lll_reduce(&b, &BigRational::one()), Err(LatticeError::InvalidDelta));
    }

    #[test]
    fn non_square_basis() {
        let b = IntBasis::from_i64(&[&[1, 1, 1, 1], &[-1, 0, 2, 7], &[3, 5, 6, 0]]).unwrap();
        let out = lll_reduce(&b, &BigRational::new(99.into(), 100.into())).unwrap();
        let g = gram_schmidt(&out.basis).unwrap();
        assert!(size_reduced(&g) && lovasz_holds(&g, &BigRational::new(99.into(), 100.into())));
        assert_eq!(out.basis.gram_det(), b.gram_det());
    }
}
