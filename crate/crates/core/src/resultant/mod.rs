//! Sylvester matrices, resultants, discriminants and root-count bounds.

mod det;

pub use det::{det_bareiss, det_degree_bound, det_integer, det_interpolate, interpolate, BareissRing};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::poly::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResultantError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("both polynomials have degree 0 in variable {0}")]
    NoDegreeInVariable(usize),
    #[error("degree {0} too small for a discriminant")]
    DegreeTooSmall(u32),
    #[error("arity mismatch")]
    ArityMismatch,
}

/// Sylvester matrix of `f` and `g` with respect to variable `var`.
/// The first `m` rows shift the coefficients of `f`, the next `k` rows
/// those of `g`, highest power first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylvesterMatrix {
    pub entries: Vec<Vec<MultiPoly>>,
    pub k: u32,
    pub m: u32,
    pub var: usize,
}

pub fn sylvester_matrix(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<SylvesterMatrix, ResultantError> {
    if f.arity() != g.arity() {
        return Err(ResultantError::ArityMismatch);
    }
    if f.is_zero() || g.is_zero() {
        return Err(ResultantError::ZeroPolynomial);
    }
    let k = f.degree_in(var).unwrap();
    let m = g.degree_in(var).unwrap();
    if k == 0 && m == 0 {
        return Err(ResultantError::NoDegreeInVariable(var));
    }
    let size = (k + m) as usize;
    let zero = MultiPoly::zero(f.arity());
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let mut entries = vec![vec![zero.clone(); size]; size];
    for i in 0..m as usize {
        for j in 0..=k as usize {
            entries[i][i + j] = fc[k as usize - j].clone();
        }
    }
    for i in 0..k as usize {
        for j in 0..=m as usize {
            entries[m as usize + i][i + j] = gc[m as usize - j].clone();
        }
    }
    Ok(SylvesterMatrix { entries, k, m, var })
}

impl SylvesterMatrix {
    /// Variables other than the eliminated one that occur in some entry.
    pub fn free_variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self
            .entries
            .iter()
            .flatten()
            .flat_map(|p| p.variables())
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Exact determinant. Entries in at most one variable go through
    /// evaluation-interpolation, others through Bareiss over ℤ[vars].
    pub fn determinant(&self) -> MultiPoly {
        let arity = self
            .entries
            .first()
            .and_then(|r| r.first())
            .map(|p| p.arity())
            .unwrap_or(1);
        match self.free_variables().as_slice() {
            [] => {
                let im: Vec<Vec<BigInt>> = self
                    .entries
                    .iter()
                    .map(|r| r.iter().map(|p| p.constant_term()).collect())
                    .collect();
                MultiPoly::constant(arity, det_integer(&im))
            }
            [v] => det_interpolate(&self.entries, *v, arity),
            _ => det_bareiss(&self.entries, MultiPoly::zero(arity)),
        }
    }
}

/// `Res_var(f, g)`, a polynomial in the remaining variables. The arity is
/// kept; `var` no longer occurs.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly, ResultantError> {
    Ok(sylvester_matrix(f, g, var)?.determinant())
}

/// Same as [`resultant`] but always via Bareiss; used to cross-check.
pub fn resultant_bareiss(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly, ResultantError> {
    let s = sylvester_matrix(f, g, var)?;
    Ok(det_bareiss(&s.entries, MultiPoly::zero(f.arity())))
}

/// `(−1)^{k(k−1)/2}·Res(f, f′)/a_k`.
pub fn discriminant(f: &MultiPoly, var: usize) -> Result<MultiPoly, ResultantError> {
    if f.is_zero() {
        return Err(ResultantError::ZeroPolynomial);
    }
    let k = f.degree_in(var).unwrap();
    if k < 2 {
        return Err(ResultantError::DegreeTooSmall(k));
    }
    let r = resultant(f, &f.derivative(var), var)?;
    let lead = f.coeffs_in(var).pop().expect("degree >= 2");
    let q = r.div_exact(&lead).expect("leading coefficient divides Res(f, f')");
    Ok(if (k * (k - 1) / 2) % 2 == 1 { -q } else { q })
}

/// True iff every variable occurring in `f` or `g` yields a nonconstant
/// resultant.
pub fn alg_independent(f: &MultiPoly, g: &MultiPoly) -> bool {
    if f.is_zero() || g.is_zero() || f.arity() != g.arity() {
        return false;
    }
    let mut vars = f.variables();
    vars.extend(g.variables());
    vars.sort_unstable();
    vars.dedup();
    if vars.is_empty() {
        return false;
    }
    vars.iter().all(|&v| match resultant(f, g, v) {
        Ok(r) => !r.is_constant(),
        Err(_) => false,
    })
}

/// Product of total degrees.
pub fn bezout_bound(degrees: &[u64]) -> BigInt {
    degrees.iter().fold(BigInt::one(), |acc, &d| acc * BigInt::from(d))
}

/// `2^{m(m−1)/2}·(n+1)^m`.
pub fn khovanskii_bound(n: u64, m: u64) -> BigInt {
    (BigInt::one() << (m * m.saturating_sub(1) / 2)) * num_traits::pow(BigInt::from(n + 1), m as usize)
}
