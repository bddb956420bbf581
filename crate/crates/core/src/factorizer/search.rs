//! Residue-class search and the known-bits variant.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::report::{BoundSummary, ExperimentReport, GridRecord, Moduli, Outcome, PairRecord, Timings};
use super::{construct_poly, gcd_split, recover_factors, solve_system, FactorError, FactorInstance};
use crate::arith::{isqrt, log2_big, next_prime, primality};
use crate::config::{BoundMode, Config};
use crate::smallroots::{find_independent_polys, RootBounds, SmallRootsError, Status};

/// Everything fixed for a run: moduli, root bounds and the `z0` range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSetup {
    pub n: BigInt,
    pub m_mod: BigInt,
    pub n_mod: BigInt,
    pub x_bound: BigInt,
    pub y_bound: BigInt,
    pub z_cap: u64,
    /// Known factors, used only to check that the lattice vectors vanish
    /// at the true root.
    pub planted: Option<(BigInt, BigInt)>,
}

fn check_n(n: &BigInt) -> Result<(), FactorError> {
    if *n < BigInt::from(4) {
        return Err(FactorError::NTooSmall);
    }
    if primality(n).is_prime() {
        return Err(FactorError::NPrime);
    }
    Ok(())
}

/// `⌈(log₂ N)^e⌉`.
fn log_power(n: &BigInt, e: u32) -> f64 {
    log2_big(n).powi(e as i32).ceil()
}

impl SearchSetup {
    /// Moduli default to the smallest prime `≥ (log₂ N)^A`.
    pub fn residue(n: &BigInt, cfg: &Config) -> Result<Self, FactorError> {
        check_n(n)?;
        let start = BigInt::from(log_power(n, cfg.a_exp).max(2.0) as u64);
        let default_mod = next_prime(&(start - 1));
        let m_mod = cfg.m_mod.clone().unwrap_or_else(|| default_mod.clone());
        let n_mod = cfg.n_mod.clone().unwrap_or(default_mod);
        Self::with_moduli(n, m_mod, n_mod, cfg.bounds, cfg)
    }

    /// `n = m`, tight bounds.
    pub fn known_bits(n: &BigInt, m: &BigInt, cfg: &Config) -> Result<Self, FactorError> {
        check_n(n)?;
        Self::with_moduli(n, m.clone(), m.clone(), BoundMode::Tight, cfg)
    }

    fn with_moduli(n: &BigInt, m_mod: BigInt, n_mod: BigInt, mode: BoundMode, cfg: &Config) -> Result<Self, FactorError> {
        if m_mod < BigInt::from(2) || n_mod < BigInt::from(2) {
            return Err(FactorError::InvalidInstance("moduli must be >= 2".into()));
        }
        let (x, y) = match mode {
            BoundMode::Sqrt => {
                let s: BigInt = isqrt(n) + 1;
                (s.clone(), s)
            }
            BoundMode::Tight => {
                let s: BigInt = isqrt(&(n * 2));
                (&s / &m_mod + 1, &s / &n_mod + 1)
            }
        };
        let z_cap = cfg.z_cap.unwrap_or_else(|| log_power(n, cfg.b_exp).max(1.0) as u64);
        Ok(SearchSetup {
            n: n.clone(),
            x_bound: cfg.x_bound.clone().unwrap_or(x),
            y_bound: cfg.y_bound.clone().unwrap_or(y),
            m_mod,
            n_mod,
            z_cap,
            planted: None,
        })
    }

    fn report(&self, mode: &str, cfg: &Config) -> ExperimentReport {
        ExperimentReport {
            mode: mode.to_string(),
            n: self.n.clone(),
            moduli: Moduli {
                m: self.m_mod.clone(),
                n: self.n_mod.clone(),
            },
            xy_bounds: vec![self.x_bound.clone(), self.y_bound.clone()],
            z_cap: self.z_cap,
            pairs_tested: 0,
            outcome: Outcome::Unfactored,
            method: None,
            factors: None,
            winner: None,
            status_counts: BTreeMap::new(),
            failure: None,
            bound_verdicts: BoundSummary::default(),
            pairs: Vec::new(),
            config: cfg.clone(),
            seed: cfg.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timings_ms: None,
        }
    }
}

fn grid_record(z0: u64, e: &BigInt, mult: u32, tau: &num_rational::BigRational) -> GridRecord {
    GridRecord {
        z0,
        e_shift: e.clone(),
        mult,
        tau: tau.clone(),
        status: None,
        error: None,
        dim: 0,
        ernst_holds: false,
        ernst_log2_margin: 0.0,
        general_holds: false,
        hg_l2_pass: 0,
        hg_linf_pass: 0,
        dependent_rejected: 0,
        lattice_reduced: false,
        planted_verified: None,
        candidates: Vec::new(),
        solutions: Vec::new(),
        dependent_after_substitution: 0,
    }
}

/// Runs every admissible `z0` and grid point for one residue pair and
/// stops at the first factorization.
pub fn probe_pair(setup: &SearchSetup, cfg: &Config, c: &BigInt, d: &BigInt) -> PairRecord {
    let mut rec = PairRecord::new(c.clone(), d.clone());
    let n = &setup.n;
    for v in [c, d] {
        if let Some((p, q)) = gcd_split(n, v) {
            rec.factors = Some(vec![p, q]);
            rec.method = Some("residue_gcd".into());
            return rec;
        }
    }
    let grid = cfg.grid_points();
    for z0 in 1..=setup.z_cap {
        if rec.z0_used.len() >= cfg.z0_attempts as usize {
            break;
        }
        let z0b = BigInt::from(z0);
        let mut e = cfg.e_shift.clone();
        let mut retries = 0;
        'retry: loop {
            let inst = FactorInstance::new(
                n.clone(),
                setup.m_mod.clone(),
                setup.n_mod.clone(),
                c.clone(),
                d.clone(),
                cfg.k_shift.clone(),
                e.clone(),
                z0b.clone(),
            );
            let cp = match construct_poly(&inst) {
                Ok(cp) => cp,
                Err(_) => break,
            };
            if retries == 0 {
                rec.z0_used.push(z0);
            }
            let planted = setup.planted.as_ref().and_then(|(p, q)| inst.root_for(p, q));
            let bounds = RootBounds::new(setup.x_bound.clone(), setup.y_bound.clone(), &z0b + 1)
                .expect("bounds are positive");
            for gp in &grid {
                let mut g = grid_record(z0, &e, gp.mult, &gp.tau);
                let params = cfg.lattice_params(gp.mult, &gp.tau).expect("config validated");
                let out = match find_independent_polys(&cp.f, &bounds, &params, planted.as_deref()) {
                    Ok(o) => o,
                    Err(SmallRootsError::NonInvertibleConstantTerm { .. }) if retries < cfg.retry_cap => {
                        retries += 1;
                        e += 1;
                        continue 'retry;
                    }
                    Err(err) => {
                        g.error = Some(err.to_string());
                        rec.grid.push(g);
                        continue;
                    }
                };
                let dg = &out.diagnostics;
                g.status = Some(out.status);
                g.dim = dg.dim;
                g.ernst_holds = dg.ernst.holds;
                g.ernst_log2_margin = dg.ernst.log2_margin;
                g.general_holds = dg.general.holds;
                g.hg_l2_pass = dg.hg_l2_pass;
                g.hg_linf_pass = dg.hg_linf_pass;
                g.dependent_rejected = dg.dependent_rejected;
                g.lattice_reduced = dg.lattice_reduced;
                g.planted_verified = dg.planted_verified;
                g.candidates = out.candidates.iter().map(|h| h.to_string()).collect();
                let mut found = Vec::new();
                if out.status == Status::Solved {
                    for h in &out.candidates {
                        match solve_system(&cp.f, h, &z0b) {
                            Ok(sol) => {
                                for (x, y) in &sol {
                                    g.solutions.push([x.to_string(), y.to_string()]);
                                }
                                found.extend(recover_factors(n, &setup.m_mod, c, &setup.n_mod, d, &sol));
                            }
                            Err(FactorError::DependentAfterSubstitution) => g.dependent_after_substitution += 1,
                            Err(err) => g.error = Some(err.to_string()),
                        }
                        if !found.is_empty() {
                            break;
                        }
                    }
                }
                rec.grid.push(g);
                if let Some((p, q)) = found.into_iter().next() {
                    rec.factors = Some(vec![p, q]);
                    rec.method = Some("lattice".into());
                    return rec;
                }
            }
            break;
        }
    }
    rec
}

fn finish(mut report: ExperimentReport, start: Instant) -> ExperimentReport {
    report.summarize();
    report.timings_ms = Some(Timings {
        total_ms: start.elapsed().as_secs_f64() * 1e3,
    });
    report
}

fn modulus_split(report: &mut ExperimentReport, n: &BigInt, moduli: &[&BigInt]) -> bool {
    for m in moduli {
        if let Some((p, q)) = gcd_split(n, m) {
            report.outcome = Outcome::Factored;
            report.method = Some("modulus_gcd".into());
            report.factors = Some(vec![p, q]);
            return true;
        }
    }
    false
}

fn take_pair(report: &mut ExperimentReport, rec: PairRecord) -> bool {
    report.pairs_tested += 1;
    let hit = rec.factors.is_some();
    if hit {
        report.outcome = Outcome::Factored;
        report.method = rec.method.clone();
        report.factors = rec.factors.clone();
        report.winner = Some(vec![rec.c.clone(), rec.d.clone()]);
    }
    report.pairs.push(rec);
    hit
}

/// Tries the residue pairs `(c, d)`, `1 ≤ c < m`, `1 ≤ d < n`, in
/// lexicographic order (capped by `max_pairs`). Pairs run in parallel in
/// fixed-size chunks; the reported winner is the lexicographically first
/// success, so the result does not depend on the worker count.
pub fn residue_search(n: &BigInt, cfg: &Config) -> Result<ExperimentReport, FactorError> {
    let setup = SearchSetup::residue(n, cfg)?;
    run_residue_search(&setup, cfg)
}

pub fn run_residue_search(setup: &SearchSetup, cfg: &Config) -> Result<ExperimentReport, FactorError> {
    let start = Instant::now();
    let mut report = setup.report("residue_search", cfg);
    if modulus_split(&mut report, &setup.n, &[&setup.m_mod, &setup.n_mod]) {
        return Ok(finish(report, start));
    }
    let too_big = || FactorError::InvalidInstance("moduli must fit in 64 bits".into());
    let m = setup.m_mod.to_u64().ok_or_else(too_big)?;
    let nn = setup.n_mod.to_u64().ok_or_else(too_big)?;
    let total = (m - 1).saturating_mul(nn - 1);
    let limit = cfg.max_pairs.map_or(total, |c| c.min(total));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| FactorError::Config(e.to_string()))?;
    let chunk = (pool.current_num_threads().max(1) * 2) as u64;
    let mut next = 0u64;
    while next < limit {
        let end = (next + chunk).min(limit);
        let recs: Vec<PairRecord> = pool.install(|| {
            (next..end)
                .into_par_iter()
                .map(|i| {
                    let c = BigInt::from(i / (nn - 1) + 1);
                    let d = BigInt::from(i % (nn - 1) + 1);
                    probe_pair(setup, cfg, &c, &d)
                })
                .collect()
        });
        for rec in recs {
            if take_pair(&mut report, rec) {
                return Ok(finish(report, start));
            }
        }
        next = end;
    }
    Ok(finish(report, start))
}

/// Factors `N` given `p ≡ c (mod m)`: `d = N·c⁻¹ mod m`, one pair.
pub fn known_bits_factor(n: &BigInt, m: &BigInt, c: &BigInt, cfg: &Config) -> Result<ExperimentReport, FactorError> {
    let setup = SearchSetup::known_bits(n, m, cfg)?;
    run_known_bits(&setup, c, cfg)
}

pub fn run_known_bits(setup: &SearchSetup, c: &BigInt, cfg: &Config) -> Result<ExperimentReport, FactorError> {
    let start = Instant::now();
    let m = &setup.m_mod;
    if c.is_zero() || c < &BigInt::zero() || c >= m {
        return Err(FactorError::InvalidInstance("need 1 <= c < m".into()));
    }
    let mut report = setup.report("known_bits", cfg);
    // x0 = 0 edge: p = c itself.
    if let Some((p, q)) = gcd_split(&setup.n, c) {
        report.outcome = Outcome::Factored;
        report.method = Some("residue_gcd".into());
        report.factors = Some(vec![p, q]);
        return Ok(finish(report, start));
    }
    if modulus_split(&mut report, &setup.n, &[m]) {
        return Ok(finish(report, start));
    }
    let g = c.extended_gcd(m);
    if !g.gcd.is_one() {
        return Err(FactorError::InvalidInstance("c is not invertible mod m".into()));
    }
    let d = (&setup.n * g.x).mod_floor(m);
    let rec = probe_pair(setup, cfg, c, &d);
    take_pair(&mut report, rec);
    Ok(finish(report, start))
}
