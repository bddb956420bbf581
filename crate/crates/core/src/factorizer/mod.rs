//! The factoring pipeline: polynomial construction from residue classes,
//! elimination by resultants, and factor recovery behind a gcd gate.

mod report;
mod search;

pub use report::{append_jsonl, BoundSummary, ExperimentReport, GridRecord, Moduli, Outcome, PairRecord, Timings};
pub use search::{known_bits_factor, probe_pair, residue_search, run_known_bits, run_residue_search, SearchSetup};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_near_prime, primality, Primality};
use crate::poly::MultiPoly;
use crate::resultant::{resultant, ResultantError};
use crate::smallroots::SmallRootsError;
use crate::uni::integer_roots;

/// Cofactor search limit for near-prime `r`.
const NEAR_PRIME_CAP: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("N must be at least 4")]
    NTooSmall,
    #[error("N is prime")]
    NPrime,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("degenerate residue (c·d·k = 0)")]
    DegenerateResidue,
    #[error("r = {0} is neither prime nor near-prime")]
    RNotPrime(BigInt),
    #[error("the pair is dependent after substituting z = z0")]
    DependentAfterSubstitution,
    #[error("resultant: {0}")]
    Resultant(#[from] ResultantError),
    #[error("small roots: {0}")]
    SmallRoots(#[from] SmallRootsError),
    #[error("config: {0}")]
    Config(String),
}

/// Residue-class data for one polynomial `f_{c,d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorInstance {
    #[serde(with = "crate::serde_big")]
    pub n: BigInt,
    #[serde(with = "crate::serde_big::rational")]
    pub alpha: BigRational,
    #[serde(with = "crate::serde_big::rational")]
    pub beta: BigRational,
    #[serde(with = "crate::serde_big::rational")]
    pub gamma: BigRational,
    #[serde(with = "crate::serde_big")]
    pub m_mod: BigInt,
    #[serde(with = "crate::serde_big")]
    pub n_mod: BigInt,
    #[serde(with = "crate::serde_big")]
    pub c_res: BigInt,
    #[serde(with = "crate::serde_big")]
    pub d_res: BigInt,
    #[serde(with = "crate::serde_big")]
    pub k_shift: BigInt,
    #[serde(with = "crate::serde_big")]
    pub e_shift: BigInt,
    #[serde(with = "crate::serde_big")]
    pub z0: BigInt,
    #[serde(with = "crate::serde_big")]
    pub r_prime: BigInt,
    pub a_exp: u32,
    pub b_exp: u32,
}

impl FactorInstance {
    /// `α = 1/2`, `γ = 1/4`, `β = α + γ`, `A = 1`, `B = 2`; `r = k·z0 + e`.
    pub fn new(n: BigInt, m: BigInt, nn: BigInt, c: BigInt, d: BigInt, k: BigInt, e: BigInt, z0: BigInt) -> Self {
        let half = BigRational::new(1.into(), 2.into());
        let gamma = BigRational::new(1.into(), 4.into());
        FactorInstance {
            r_prime: &k * &z0 + &e,
            n,
            beta: &half + &gamma,
            alpha: half,
            gamma,
            m_mod: m,
            n_mod: nn,
            c_res: c,
            d_res: d,
            k_shift: k,
            e_shift: e,
            z0,
            a_exp: 1,
            b_exp: 2,
        }
    }

    pub fn from_i64(n: i64, m: i64, nn: i64, c: i64, d: i64, k: i64, e: i64, z0: i64) -> Self {
        let b = BigInt::from;
        Self::new(b(n), b(m), b(nn), b(c), b(d), b(k), b(e), b(z0))
    }

    /// `((p − c)/m, (q − d)/n, z0)` when the residue hypothesis holds.
    pub fn root_for(&self, p: &BigInt, q: &BigInt) -> Option<Vec<BigInt>> {
        let (x, rx) = (p - &self.c_res).div_rem(&self.m_mod);
        let (y, ry) = (q - &self.d_res).div_rem(&self.n_mod);
        (rx.is_zero() && ry.is_zero()).then(|| vec![x, y, self.z0.clone()])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RClass {
    Prime,
    ProbablePrime,
    /// Has a prime factor larger than `r^{4/5}`.
    NearPrime,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructedPoly {
    /// Primitive part of `raw`.
    #[serde(with = "crate::serde_big::poly")]
    pub f: MultiPoly,
    #[serde(with = "crate::serde_big::poly")]
    pub raw: MultiPoly,
    #[serde(with = "crate::serde_big")]
    pub content: BigInt,
    #[serde(with = "crate::serde_big")]
    pub raw_height: BigInt,
    pub r_class: RClass,
    #[serde(with = "crate::serde_big::opt_vec")]
    pub root_hint: Option<Vec<BigInt>>,
}

impl ConstructedPoly {
    /// `f = A(x, y) + B·z` with `B ≠ 0` and content 1, which makes `f`
    /// irreducible.
    pub fn irreducibility_witness(&self) -> bool {
        self.f.content().is_one() && self.f.degree_in(2) == Some(1) && {
            let zc = self.f.coeffs_in(2);
            zc.len() == 2 && zc[1].is_constant() && !zc[1].is_zero()
        }
    }
}

fn classify_r(r: &BigInt) -> Option<RClass> {
    match primality(r) {
        Primality::Prime => Some(RClass::Prime),
        Primality::ProbablePrime => Some(RClass::ProbablePrime),
        Primality::Composite => is_near_prime(r, NEAR_PRIME_CAP).then_some(RClass::NearPrime),
    }
}

/// `f_raw = r·(mn·xy + md·x + cn·y) + cd·(k·z + e) − r·N`: the product
/// `(mx + c)(ny + d)(kz + e) − rN` with `kz + e` replaced by `r` in every
/// term except `cd·(kz + e)`. Returns the primitive part.
pub fn construct_poly(inst: &FactorInstance) -> Result<ConstructedPoly, FactorError> {
    let two = BigInt::from(2);
    let inv = |m: &str| Err(FactorError::InvalidInstance(m.into()));
    if inst.n < BigInt::from(4) {
        return Err(FactorError::NTooSmall);
    }
    if inst.m_mod < two || inst.n_mod < two {
        return inv("moduli must be >= 2");
    }
    if inst.k_shift < two {
        return inv("k must be >= 2");
    }
    if inst.c_res.is_zero() || inst.d_res.is_zero() {
        return Err(FactorError::DegenerateResidue);
    }
    if inst.c_res.is_negative() || inst.c_res >= inst.m_mod || inst.d_res.is_negative() || inst.d_res >= inst.n_mod {
        return inv("residues must satisfy 1 <= c < m, 1 <= d < n");
    }
    let r = &inst.k_shift * &inst.z0 + &inst.e_shift;
    if r != inst.r_prime {
        return inv("r_prime must equal k*z0 + e");
    }
    let r_class = classify_r(&r).ok_or_else(|| FactorError::RNotPrime(r.clone()))?;
    let (m, nn, c, d) = (&inst.m_mod, &inst.n_mod, &inst.c_res, &inst.d_res);
    let cd = c * d;
    let raw = MultiPoly::from_terms(
        3,
        vec![
            (vec![1, 1, 0], &r * m * nn),
            (vec![1, 0, 0], &r * m * d),
            (vec![0, 1, 0], &r * c * nn),
            (vec![0, 0, 1], &cd * &inst.k_shift),
            (vec![0, 0, 0], &cd * &inst.e_shift - &r * &inst.n),
        ],
    )
    .expect("arity 3");
    let c0 = raw.constant_term();
    let floor = &r * &inst.n - &cd * &inst.e_shift;
    assert!(c0.abs() >= floor, "constant term below rN - cde");
    let (content, f) = raw.content_and_primitive().map_err(|_| FactorError::DegenerateResidue)?;
    Ok(ConstructedPoly {
        raw_height: raw.height(),
        f,
        raw,
        content,
        r_class,
        root_hint: None,
    })
}

/// Integer pairs `(x0, y0)` with `f(x0, y0, z0) = g(x0, y0, z0) = 0`,
/// found from `Res_y` and `Res_x` after substituting `z = z0`.
pub fn solve_system(f: &MultiPoly, g: &MultiPoly, z0: &BigInt) -> Result<Vec<(BigInt, BigInt)>, FactorError> {
    let fs = f.substitute(2, z0);
    let gs = g.substitute(2, z0);
    if fs.is_zero() || gs.is_zero() {
        return Err(FactorError::DependentAfterSubstitution);
    }
    let roots_of = |elim: usize, keep: usize| -> Result<Option<Vec<BigInt>>, FactorError> {
        let res = match resultant(&fs, &gs, elim) {
            Ok(r) => r,
            Err(ResultantError::NoDegreeInVariable(_)) => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        if res.is_zero() {
            return Err(FactorError::DependentAfterSubstitution);
        }
        let u = res.to_uni(keep).expect("only the kept variable remains");
        if u.degree().unwrap_or(0) == 0 {
            return Ok(Some(Vec::new()));
        }
        Ok(Some(integer_roots(&u).expect("nonzero")))
    };
    let xs = roots_of(1, 0)?;
    let ys = roots_of(0, 1)?;
    let (xs, ys) = match (xs, ys) {
        (Some(xs), Some(ys)) => (xs, ys),
        // Neither polynomial involves the eliminated variable: nothing to pair.
        _ => return Ok(Vec::new()),
    };
    let mut out = Vec::new();
    for x in &xs {
        for y in &ys {
            let p = [x.clone(), y.clone(), z0.clone()];
            if f.eval(&p).expect("arity 3").is_zero() && g.eval(&p).expect("arity 3").is_zero() {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(out)
}

/// The only place factor pairs leave the crate: `p·q = N`, `1 < p ≤ q < N`.
pub fn certify(n: &BigInt, g: &BigInt) -> (BigInt, BigInt) {
    let g = g.abs();
    let (q, r) = n.div_rem(&g);
    assert!(r.is_zero() && g > BigInt::one() && g < *n, "gcd gate let a non-factor through");
    let (p, q) = if g <= q { (g, q) } else { (q, g) };
    assert!(&p * &q == *n && p > BigInt::one() && p <= q && q < *n);
    (p, q)
}

/// Nontrivial `gcd(v, N)`, certified.
pub fn gcd_split(n: &BigInt, v: &BigInt) -> Option<(BigInt, BigInt)> {
    let g = v.gcd(n);
    (g > BigInt::one() && g < *n).then(|| certify(n, &g))
}

/// `p̂ = m·x0 + c`, `q̂ = n·y0 + d`; keeps the splits that pass
/// `1 < gcd(·, N) < N`, normalised and deduplicated.
pub fn recover_factors(
    n: &BigInt,
    m_mod: &BigInt,
    c_res: &BigInt,
    n_mod: &BigInt,
    d_res: &BigInt,
    candidates: &[(BigInt, BigInt)],
) -> Vec<(BigInt, BigInt)> {
    let mut out: Vec<(BigInt, BigInt)> = Vec::new();
    for (x0, y0) in candidates {
        let p_hat = m_mod * x0 + c_res;
        let q_hat = n_mod * y0 + d_res;
        for v in [p_hat, q_hat] {
            if let Some(pq) = gcd_split(n, &v) {
                if !out.contains(&pq) {
                    out.push(pq);
                }
            }
        }
    }
    out.sort();
    out
}
