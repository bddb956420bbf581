use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{IntBasis, LatticeError};

/// Exact Gram-Schmidt data: `b_i = b_i* + Σ_{j<i} μ_ij b_j*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gso {
    /// Lower-triangular, `mu[i][j]` for `j < i`; the diagonal is 1.
    pub mu: Vec<Vec<BigRational>>,
    pub norms_sq: Vec<BigRational>,
    pub bstar: Vec<Vec<BigRational>>,
}

fn rdot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn gram_schmidt(b: &IntBasis) -> Result<Gso, LatticeError> {
    let n = b.num_rows();
    let rows: Vec<Vec<BigRational>> = b
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norms: Vec<BigRational> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut v = rows[i].clone();
        for j in 0..i {
            let m = rdot(&rows[i], &bstar[j]) / &norms[j];
            for (a, s) in v.iter_mut().zip(&bstar[j]) {
                *a -= &m * s;
            }
            mu[i][j] = m;
        }
        mu[i][i] = BigRational::from_integer(BigInt::from(1));
        let nv = rdot(&v, &v);
        if nv.is_zero() {
            return Err(LatticeError::DependentRows { rank: b.rank(), rows: n });
        }
        norms.push(nv);
        bstar.push(v);
    }
    Ok(Gso { mu, norms_sq: norms, bstar })
}
