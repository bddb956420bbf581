//! Experiment reports: one JSON object per run, appended as JSONL.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::smallroots::Status;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Moduli {
    #[serde(with = "crate::serde_big")]
    pub m: BigInt,
    #[serde(with = "crate::serde_big")]
    pub n: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Factored,
    Unfactored,
}

/// One lattice attempt: a polynomial `f_{c,d}` at one `(z0, e, mult, τ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRecord {
    pub z0: u64,
    #[serde(with = "crate::serde_big")]
    pub e_shift: BigInt,
    pub mult: u32,
    #[serde(with = "crate::serde_big::rational")]
    pub tau: BigRational,
    pub status: Option<Status>,
    pub error: Option<String>,
    pub dim: usize,
    pub ernst_holds: bool,
    pub ernst_log2_margin: f64,
    pub general_holds: bool,
    pub hg_l2_pass: usize,
    pub hg_linf_pass: usize,
    pub dependent_rejected: usize,
    pub lattice_reduced: bool,
    pub planted_verified: Option<bool>,
    pub candidates: Vec<String>,
    /// Integer solutions `(x0, y0)` of the substituted systems.
    pub solutions: Vec<[String; 2]>,
    /// Candidates that became dependent on `f` after `z = z0`.
    pub dependent_after_substitution: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    #[serde(with = "crate::serde_big")]
    pub c: BigInt,
    #[serde(with = "crate::serde_big")]
    pub d: BigInt,
    /// `z0` values whose `r = k·z0 + e` was admissible.
    pub z0_used: Vec<u64>,
    pub grid: Vec<GridRecord>,
    #[serde(with = "crate::serde_big::opt_vec")]
    pub factors: Option<Vec<BigInt>>,
    pub method: Option<String>,
}

impl PairRecord {
    pub fn new(c: BigInt, d: BigInt) -> Self {
        PairRecord {
            c,
            d,
            z0_used: Vec::new(),
            grid: Vec::new(),
            factors: None,
            method: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundSummary {
    pub attempts: usize,
    pub ernst_holds: usize,
    pub general_holds: usize,
    /// Largest `log₂` margin of the Ernst bound seen.
    pub best_ernst_log2_margin: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub mode: String,
    #[serde(with = "crate::serde_big")]
    pub n: BigInt,
    pub moduli: Moduli,
    #[serde(with = "crate::serde_big::vec")]
    pub xy_bounds: Vec<BigInt>,
    pub z_cap: u64,
    pub pairs_tested: u64,
    pub outcome: Outcome,
    /// `lattice`, `residue_gcd` or `modulus_gcd`.
    pub method: Option<String>,
    #[serde(with = "crate::serde_big::opt_vec")]
    pub factors: Option<Vec<BigInt>>,
    #[serde(with = "crate::serde_big::opt_vec")]
    pub winner: Option<Vec<BigInt>>,
    pub status_counts: BTreeMap<String, usize>,
    /// Dominant reason when unfactored.
    pub failure: Option<String>,
    pub bound_verdicts: BoundSummary,
    pub pairs: Vec<PairRecord>,
    pub config: Config,
    pub seed: u64,
    pub version: String,
    /// Wall-clock data; excluded from [`ExperimentReport::deterministic_json`].
    pub timings_ms: Option<Timings>,
}

impl ExperimentReport {
    /// Fills the aggregate fields from `pairs`.
    pub(crate) fn summarize(&mut self) {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        let mut b = BoundSummary::default();
        for g in self.pairs.iter().flat_map(|p| &p.grid) {
            let key = match (&g.status, &g.error) {
                (Some(s), _) => format!("{s:?}"),
                (None, Some(_)) => "Error".to_string(),
                (None, None) => "Unknown".to_string(),
            };
            *counts.entry(key).or_default() += 1;
            if g.status.is_some() {
                b.attempts += 1;
                b.ernst_holds += g.ernst_holds as usize;
                b.general_holds += g.general_holds as usize;
                let m = g.ernst_log2_margin;
                b.best_ernst_log2_margin = Some(b.best_ernst_log2_margin.map_or(m, |x: f64| x.max(m)));
            }
        }
        self.failure = match self.outcome {
            Outcome::Factored => None,
            Outcome::Unfactored => Some(if self.pairs.is_empty() {
                "NoPairs".to_string()
            } else if counts.contains_key("Solved") {
                "NoFactorFromCandidates".to_string()
            } else {
                counts
                    .iter()
                    .max_by_key(|(k, v)| (**v, std::cmp::Reverse((*k).clone())))
                    .map(|(k, _)| k.clone())
                    .unwrap_or_else(|| "NoAdmissibleShift".to_string())
            }),
        };
        self.status_counts = counts;
        self.bound_verdicts = b;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// JSON without the timings block; identical across runs with the
    /// same input and configuration.
    pub fn deterministic_json(&self) -> String {
        let mut r = self.clone();
        r.timings_ms = None;
        r.to_json()
    }
}

/// Appends `report` as one line of JSON.
pub fn append_jsonl(path: &Path, report: &ExperimentReport) -> std::io::Result<()> {
    let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(f, "{}", report.to_json())
}
