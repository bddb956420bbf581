//! Exact integer lattices: bases, echelon form, Gram-Schmidt, LLL and the
//! Howgrave-Graham smallness check.

mod gso;
mod hg;
mod lll;

pub use gso::{gram_schmidt, Gso};
pub use hg::{hg_check, hg_verdict, HgVerdict};
pub use lll::{lll_core, lll_reduce, lovasz_holds, size_reduced, LllOutput};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("empty basis")]
    Empty,
    #[error("row {row} has length {found}, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("rows are linearly dependent (rank {rank} of {rows})")]
    DependentRows { rank: usize, rows: usize },
    #[error("delta must satisfy 1/4 < delta < 1")]
    InvalidDelta,
    #[error("bad basis json: {0}")]
    Json(String),
}

/// Integer row basis (or generating set) of a lattice in ℤ^n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<String>>", into = "Vec<Vec<String>>")]
pub struct IntBasis {
    rows: Vec<Vec<BigInt>>,
}

impl IntBasis {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let Some(first) = rows.first() else {
            return Err(LatticeError::Empty);
        };
        let n = first.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(LatticeError::RaggedRows {
                    row: i,
                    expected: n,
                    found: r.len(),
                });
            }
        }
        Ok(IntBasis { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row_norm_sq(&self, i: usize) -> BigInt {
        dot(&self.rows[i], &self.rows[i])
    }

    /// Determinant of the Gram matrix, i.e. `vol(L)²` for a basis.
    pub fn gram_det(&self) -> BigInt {
        let g: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|a| self.rows.iter().map(|b| dot(a, b)).collect())
            .collect();
        crate::resultant::det_integer(&g)
    }

    /// `|det|` of a square basis.
    pub fn abs_det(&self) -> Option<BigInt> {
        (self.num_rows() == self.dim()).then(|| crate::resultant::det_integer(&self.rows).abs())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string matrix always serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, LatticeError> {
        serde_json::from_str(s).map_err(|e| LatticeError::Json(e.to_string()))
    }

    /// Basis of the lattice spanned by the rows, in echelon form with
    /// positive pivots and entries above each pivot reduced into
    /// `[0, pivot)`. Row count equals the rank.
    pub fn echelon(&self) -> IntBasis {
        let n = self.dim();
        // pivots[c] = row whose leading entry sits in column c.
        let mut pivots: Vec<Option<Vec<BigInt>>> = vec![None; n];
        for r in &self.rows {
            insert_row(&mut pivots, r.clone());
        }
        let mut out: Vec<Vec<BigInt>> = Vec::new();
        let mut cols: Vec<usize> = Vec::new();
        for (c, p) in pivots.into_iter().enumerate() {
            if let Some(p) = p {
                out.push(p);
                cols.push(c);
            }
        }
        for i in 0..out.len() {
            for k in i + 1..out.len() {
                let c = cols[k];
                let q = out[i][c].div_floor(&out[k][c]);
                if !q.is_zero() {
                    let rk = out[k].clone();
                    axpy(&mut out[i], &q, &rk);
                }
            }
        }
        IntBasis { rows: out }
    }

    /// Echelon basis of `span(rows) + ⊕ M_j·ℤ·e_j`. Entries are kept
    /// reduced modulo the column moduli `M_j` throughout, so sizes stay
    /// bounded by `max M_j`.
    pub fn echelon_modular(rows: &[Vec<BigInt>], moduli: &[BigInt]) -> Result<IntBasis, LatticeError> {
        let n = moduli.len();
        if n == 0 || moduli.iter().any(|m| !m.is_positive()) {
            return Err(LatticeError::Empty);
        }
        let mut pivots: Vec<Vec<BigInt>> = moduli
            .iter()
            .enumerate()
            .map(|(j, m)| {
                let mut r = vec![BigInt::zero(); n];
                r[j] = m.clone();
                r
            })
            .collect();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(LatticeError::RaggedRows {
                    row: i,
                    expected: n,
                    found: r.len(),
                });
            }
            let mut v: Vec<BigInt> = r.iter().zip(moduli).map(|(x, m)| x.mod_floor(m)).collect();
            for c in 0..n {
                if v[c].is_zero() {
                    continue;
                }
                let p = &pivots[c];
                let e = p[c].extended_gcd(&v[c]);
                let (a, b) = (&p[c] / &e.gcd, &v[c] / &e.gcd);
                let mut new_p: Vec<BigInt> = p.iter().zip(&v).map(|(x, y)| &e.x * x + &e.y * y).collect();
                let mut rest: Vec<BigInt> = p.iter().zip(&v).map(|(x, y)| &a * y - &b * x).collect();
                for j in c + 1..n {
                    new_p[j] = new_p[j].mod_floor(&moduli[j]);
                    rest[j] = rest[j].mod_floor(&moduli[j]);
                }
                debug_assert!(rest[c].is_zero());
                pivots[c] = new_p;
                v = rest;
            }
        }
        for i in 0..n {
            for k in i + 1..n {
                let q = pivots[i][k].div_floor(&pivots[k][k]);
                if !q.is_zero() {
                    let rk = pivots[k].clone();
                    axpy(&mut pivots[i], &q, &rk);
                }
            }
        }
        Ok(IntBasis { rows: pivots })
    }

    pub fn rank(&self) -> usize {
        self.echelon().num_rows()
    }
}

fn insert_row(pivots: &mut [Option<Vec<BigInt>>], mut v: Vec<BigInt>) {
    let n = v.len();
    let mut c = 0;
    while c < n {
        if v[c].is_zero() {
            c += 1;
            continue;
        }
        match pivots[c].take() {
            None => {
                if v[c].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                pivots[c] = Some(v);
                return;
            }
            Some(mut p) => {
                let q = v[c].div_floor(&p[c]);
                if !q.is_zero() {
                    axpy(&mut v, &q, &p);
                }
                if !v[c].is_zero() {
                    let e = p[c].extended_gcd(&v[c]);
                    let (a, b) = (&p[c] / &e.gcd, &v[c] / &e.gcd);
                    let new_p: Vec<BigInt> = p.iter().zip(&v).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    let rest: Vec<BigInt> = p.iter().zip(&v).map(|(x, y)| &a * y - &b * x).collect();
                    p = new_p;
                    v = rest;
                }
                pivots[c] = Some(p);
                c += 1;
            }
        }
    }
}

/// `v ← v − q·w`.
pub fn axpy(v: &mut [BigInt], q: &BigInt, w: &[BigInt]) {
    for (a, b) in v.iter_mut().zip(w) {
        if !b.is_zero() {
            *a -= q * b;
        }
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

impl TryFrom<Vec<Vec<String>>> for IntBasis {
    type Error = LatticeError;

    fn try_from(v: Vec<Vec<String>>) -> Result<Self, Self::Error> {
        let rows = v
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| s.trim().parse::<BigInt>().map_err(|e| LatticeError::Json(format!("{s:?}: {e}"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        IntBasis::new(rows)
    }
}

impl From<IntBasis> for Vec<Vec<String>> {
    fn from(b: IntBasis) -> Self {
        b.rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }
}
