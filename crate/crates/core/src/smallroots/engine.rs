use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{
    admissible_sets, bound_ernst, bound_general, general_slack_holds, BoundVerdict, LatticeParams, RootBounds,
    ShiftSets, SmallRootsError,
};
use crate::arith::isqrt;
use crate::lattice::{hg_verdict, IntBasis};
use crate::poly::{monomial_value, Monomial, MultiPoly};
use crate::resultant::alg_independent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Solved,
    BoundViolated,
    NoShortVector,
    DependentCandidates,
    /// The bound holds but the lattice exceeds `max_dim` and was not reduced.
    LatticeTooLarge,
}

/// Full-rank lattice basis built from the shift polynomials.
#[derive(Debug, Clone)]
pub struct BuiltLattice {
    pub basis: IntBasis,
    pub generators: usize,
    pub r: BigInt,
    /// `height(f(xX, yY, zZ))` for the requested bounds.
    pub w: BigInt,
    /// Modulus factor actually used (coprime to the constant term).
    pub w_eff: BigInt,
    pub bounds_eff: RootBounds,
    pub sets: ShiftSets,
    /// Column scale `X^{β1}Y^{β2}Z^{β3}` for each `β ∈ T`.
    pub scales: Vec<BigInt>,
}

impl BuiltLattice {
    /// Reads a lattice vector back as a polynomial, dividing each column
    /// by its scale. The division is always exact.
    pub fn unscale(&self, v: &[BigInt]) -> MultiPoly {
        let mut h = MultiPoly::zero(3);
        for ((c, s), m) in v.iter().zip(&self.scales).zip(&self.sets.t_set) {
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(s);
            assert!(r.is_zero(), "lattice column not divisible by its scale");
            h.add_term(m.clone(), q);
        }
        h
    }
}

fn smallest_coprime_from(start: &BigInt, c0: &BigInt) -> BigInt {
    let mut v = start.clone();
    while !v.gcd(c0).is_one() {
        v += 1;
    }
    v
}

fn centered(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if BigInt::from(2) * &r > *m {
        r - m
    } else {
        r
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Shift-polynomial lattice for `f` with modulus
/// `R = W·X^{mult−1}·Y^{mult−1}·Z^{mult−1+t}`. Generators are `x^α·f′`
/// for `α ∈ S` (with `f′ = c0⁻¹·f mod R`) and `R·x^β` for `β ∈ T`, with
/// column `β` scaled by `X^{β1}Y^{β2}Z^{β3}`; the returned basis is the
/// echelon form of that generating set.
pub fn build_lattice(f: &MultiPoly, bounds: &RootBounds, params: &LatticeParams) -> Result<BuiltLattice, SmallRootsError> {
    params.validate()?;
    let sets = admissible_sets(f, params)?;
    let w = f.scale_vars(&bounds.as_vec()).expect("arity checked").height();
    if w < BigInt::from(2) {
        return Err(SmallRootsError::HeightTooSmall);
    }
    let c0 = f.constant_term();
    let ex = (params.mult - 1) as usize;
    let ez = ex + params.t_shifts as usize;
    let mut b = bounds.clone();
    let mut w_eff = w.clone();
    if params.adjust_modulus && !c0.is_zero() {
        w_eff = smallest_coprime_from(&w, &c0);
        if ex > 0 {
            b.x = smallest_coprime_from(&b.x, &c0);
            b.y = smallest_coprime_from(&b.y, &c0);
        }
        if ez > 0 {
            b.z = smallest_coprime_from(&b.z, &c0);
        }
    }
    let r = &w_eff * num_traits::pow(b.x.clone(), ex) * num_traits::pow(b.y.clone(), ex) * num_traits::pow(b.z.clone(), ez);
    let inv = mod_inverse(&c0, &r).ok_or_else(|| SmallRootsError::NonInvertibleConstantTerm {
        c0: c0.clone(),
        r: r.clone(),
    })?;
    let mut fp = MultiPoly::zero(3);
    for (m, c) in f.terms() {
        fp.add_term(m.clone(), centered(&(c * &inv), &r));
    }
    let bv = b.as_vec();
    let scales: Vec<BigInt> = sets.t_set.iter().map(|m| monomial_value(m, &bv)).collect();
    let col: BTreeMap<&Monomial, usize> = sets.t_set.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = sets.t_card;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(sets.s);
    for a in &sets.s_set {
        let mut row = vec![BigInt::zero(); n];
        for (m, c) in fp.mul_monomial(a).terms() {
            let j = col[m];
            row[j] = c * &scales[j];
        }
        rows.push(row);
    }
    // The R·x^β rows enter as column moduli.
    let moduli: Vec<BigInt> = scales.iter().map(|s| &r * s).collect();
    let generators = rows.len() + n;
    let basis = IntBasis::echelon_modular(&rows, &moduli).expect("rows share the column count");
    Ok(BuiltLattice {
        basis,
        generators,
        r,
        w,
        w_eff,
        bounds_eff: b,
        sets,
        scales,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(with = "crate::serde_big")]
    pub w: BigInt,
    #[serde(with = "crate::serde_big")]
    pub w_eff: BigInt,
    #[serde(with = "crate::serde_big")]
    pub r: BigInt,
    pub bounds: RootBounds,
    pub bounds_eff: RootBounds,
    pub sets: ShiftSets,
    pub dim: usize,
    pub generators: usize,
    pub ernst: BoundVerdict,
    pub general: BoundVerdict,
    pub general_slack_ok: bool,
    pub lattice_reduced: bool,
    pub lll_swaps: u64,
    /// `⌊‖b_i‖₂⌋` of the reduced (scaled) vectors.
    #[serde(with = "crate::serde_big::vec")]
    pub reduced_norms: Vec<BigInt>,
    pub hg_l2_pass: usize,
    pub hg_linf_pass: usize,
    pub dependent_rejected: usize,
    /// Every returned candidate and every vector passing the check
    /// vanishes at the planted root (only when one was supplied and lies
    /// inside the bounds).
    pub planted_verified: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallRootsOutcome {
    pub status: Status,
    #[serde(with = "crate::serde_big::poly_vec")]
    pub candidates: Vec<MultiPoly>,
    pub diagnostics: Diagnostics,
}

/// Primitive part with a positive leading coefficient.
fn normalize(h: &MultiPoly) -> MultiPoly {
    let (_, p) = h.content_and_primitive().expect("nonzero");
    match p.leading_term() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p,
    }
}

fn is_multiple_of(h: &MultiPoly, f: &MultiPoly) -> bool {
    let v = (0..3).rev().find(|&v| f.degree_in(v).unwrap_or(0) > 0);
    match v {
        Some(v) => h.pseudo_rem(f, v).is_zero(),
        None => true,
    }
}

/// Reduces the shift lattice and returns the short vectors that satisfy
/// the Howgrave-Graham condition and are independent of `f`.
pub fn find_independent_polys(
    f: &MultiPoly,
    bounds: &RootBounds,
    params: &LatticeParams,
    planted_root: Option<&[BigInt]>,
) -> Result<SmallRootsOutcome, SmallRootsError> {
    params.validate()?;
    let sets = admissible_sets(f, params)?;
    let w = f.scale_vars(&bounds.as_vec()).expect("arity checked").height();
    let ernst = bound_ernst(bounds, &w, &params.tau, &params.eps)?;
    let dims = (
        f.degree_in(0).unwrap_or(0),
        f.degree_in(1).unwrap_or(0),
        f.degree_in(2).unwrap_or(0),
    );
    let general = bound_general(bounds, &w, &sets, dims, &params.c_slack)?;
    let general_slack_ok = general_slack_holds(&sets, dims, &params.c_slack);
    let built = build_lattice(f, bounds, params)?;
    let mut diag = Diagnostics {
        w: built.w.clone(),
        w_eff: built.w_eff.clone(),
        r: built.r.clone(),
        bounds: bounds.clone(),
        bounds_eff: built.bounds_eff.clone(),
        sets: sets.clone(),
        dim: built.basis.num_rows(),
        generators: built.generators,
        ernst: ernst.clone(),
        general,
        general_slack_ok,
        lattice_reduced: false,
        lll_swaps: 0,
        reduced_norms: Vec::new(),
        hg_l2_pass: 0,
        hg_linf_pass: 0,
        dependent_rejected: 0,
        planted_verified: None,
    };
    if diag.dim > params.max_dim || (!ernst.holds && !params.reduce_violated) {
        let status = if ernst.holds {
            Status::LatticeTooLarge
        } else {
            Status::BoundViolated
        };
        return Ok(SmallRootsOutcome {
            status,
            candidates: Vec::new(),
            diagnostics: diag,
        });
    }
    let red = crate::lattice::lll_core(&built.basis, &params.lll_delta, false).expect("echelon basis is independent");
    diag.lattice_reduced = true;
    diag.lll_swaps = red.swaps;
    let bv = built.bounds_eff.as_vec();
    let planted = planted_root.filter(|p| built.bounds_eff.contains(p));
    let mut planted_ok = true;
    let mut candidates: Vec<MultiPoly> = Vec::new();
    for row in red.basis.rows() {
        diag.reduced_norms.push(isqrt(&crate::lattice::dot(row, row)));
        let h = built.unscale(row);
        if h.is_zero() {
            continue;
        }
        let v = hg_verdict(&h, &bv, &built.r);
        if v.linf {
            diag.hg_linf_pass += 1;
        }
        if !v.l2 {
            continue;
        }
        diag.hg_l2_pass += 1;
        if let Some(p) = planted {
            planted_ok &= h.eval(p).expect("arity 3").is_zero();
        }
        let h = normalize(&h);
        if is_multiple_of(&h, f) || !alg_independent(f, &h) {
            diag.dependent_rejected += 1;
            continue;
        }
        if !candidates.contains(&h) {
            candidates.push(h);
        }
    }
    if planted.is_some() {
        diag.planted_verified = Some(planted_ok);
    }
    let status = if !candidates.is_empty() {
        Status::Solved
    } else if !ernst.holds {
        Status::BoundViolated
    } else if diag.hg_l2_pass == 0 {
        Status::NoShortVector
    } else {
        Status::DependentCandidates
    };
    Ok(SmallRootsOutcome {
        status,
        candidates,
        diagnostics: diag,
    })
}
