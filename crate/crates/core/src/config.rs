//! Run configuration: plain `key = value` text, `#` comments, strict keys.
//! Rationals are written `p/q`, never as decimals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::smallroots::{LatticeParams, SmallRootsError, DEFAULT_MAX_DIM};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: {msg}")]
    BadValue { key: String, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read config: {0}")]
    Io(String),
}

/// How the `x`, `y` root bounds are derived from `N` and the moduli.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// `X = Y = ⌊√N⌋ + 1`.
    Sqrt,
    /// `X = ⌊√(2N)⌋/m + 1`, `Y = ⌊√(2N)⌋/n + 1` (balanced factors).
    Tight,
}

impl FromStr for BoundMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sqrt" => Ok(BoundMode::Sqrt),
            "tight" => Ok(BoundMode::Tight),
            _ => Err("expected `sqrt` or `tight`".into()),
        }
    }
}

/// One `(mult, τ)` lattice setting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub mult: u32,
    #[serde(with = "crate::serde_big::rational")]
    pub tau: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub a_exp: u32,
    pub b_exp: u32,
    #[serde(with = "crate::serde_big::rational")]
    pub tau: BigRational,
    #[serde(with = "crate::serde_big::rational")]
    pub eps: BigRational,
    #[serde(with = "crate::serde_big::rational")]
    pub gamma: BigRational,
    #[serde(with = "crate::serde_big::rational")]
    pub delta: BigRational,
    #[serde(with = "crate::serde_big::rational")]
    pub c_slack: BigRational,
    #[serde(with = "crate::serde_big::rational")]
    pub lll_delta: BigRational,
    pub mult: u32,
    pub t_shifts: Option<u32>,
    /// Explicit `(mult, τ)` list; `None` means the single point
    /// `(mult, tau)`.
    pub grid: Option<Vec<GridPoint>>,
    pub z_cap: Option<u64>,
    pub z0_attempts: u32,
    #[serde(with = "crate::serde_big::opt")]
    pub m_mod: Option<BigInt>,
    #[serde(with = "crate::serde_big::opt")]
    pub n_mod: Option<BigInt>,
    #[serde(with = "crate::serde_big")]
    pub k_shift: BigInt,
    #[serde(with = "crate::serde_big")]
    pub e_shift: BigInt,
    pub workers: usize,
    pub seed: u64,
    pub retry_cap: u32,
    pub max_pairs: Option<u64>,
    pub max_dim: usize,
    pub adjust_modulus: bool,
    pub reduce_violated: bool,
    pub bounds: BoundMode,
    #[serde(with = "crate::serde_big::opt")]
    pub x_bound: Option<BigInt>,
    #[serde(with = "crate::serde_big::opt")]
    pub y_bound: Option<BigInt>,
    pub output: Option<String>,
    pub log: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            a_exp: 1,
            b_exp: 2,
            tau: BigRational::zero(),
            eps: BigRational::new(1.into(), 100.into()),
            gamma: BigRational::new(1.into(), 4.into()),
            delta: BigRational::new(1.into(), 100.into()),
            c_slack: BigRational::zero(),
            lll_delta: BigRational::new(3.into(), 4.into()),
            mult: 1,
            t_shifts: None,
            grid: None,
            z_cap: None,
            z0_attempts: 1,
            m_mod: None,
            n_mod: None,
            k_shift: BigInt::from(2),
            e_shift: BigInt::one(),
            workers: 0,
            seed: 0,
            retry_cap: 8,
            max_pairs: None,
            max_dim: DEFAULT_MAX_DIM,
            adjust_modulus: true,
            reduce_violated: true,
            bounds: BoundMode::Sqrt,
            x_bound: None,
            y_bound: None,
            output: None,
            log: None,
        }
    }
}

/// Recognised keys, in the spelling accepted on input (case-insensitive).
pub const KEYS: &[&str] = &[
    "A_exp", "B_exp", "tau", "eps", "gamma", "delta", "c_slack", "lll_delta", "mult", "t_shifts", "grid", "Z_cap",
    "z0_attempts", "m", "n", "k", "e", "workers", "seed", "retry_cap", "max_pairs", "max_dim", "adjust_modulus",
    "reduce_violated", "bounds", "x_bound", "y_bound", "output", "log",
];

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err("rationals must be written as p/q".into());
    }
    let r: BigRational = s.parse().map_err(|e| format!("{e}"))?;
    Ok(r)
}

fn parse_opt<T: FromStr>(s: &str) -> Result<Option<T>, String>
where
    T::Err: fmt::Display,
{
    if s == "none" || s == "auto" {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|e: T::Err| e.to_string())
}

/// The 27-point grid `mult ∈ {1,2,3}`, `τ ∈ {0, 1/4, …, 2}`.
pub fn full_grid() -> Vec<GridPoint> {
    let mut g = Vec::new();
    for mult in 1..=3 {
        for q in 0..=8 {
            g.push(GridPoint {
                mult,
                tau: BigRational::new(q.into(), 4.into()),
            });
        }
    }
    g
}

fn parse_grid(s: &str) -> Result<Option<Vec<GridPoint>>, String> {
    match s {
        "none" | "single" => return Ok(None),
        "full" => return Ok(Some(full_grid())),
        _ => {}
    }
    let mut out = Vec::new();
    for item in s.split(',') {
        let (m, t) = item
            .trim()
            .split_once(':')
            .ok_or_else(|| "grid entries are `mult:tau`".to_string())?;
        out.push(GridPoint {
            mult: m.trim().parse().map_err(|e| format!("{e}"))?,
            tau: parse_rational(t)?,
        });
    }
    Ok(Some(out))
}

impl Config {
    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let v = value.trim();
        let bad = |msg: String| ConfigError::BadValue {
            key: key.to_string(),
            msg,
        };
        let k = key.trim().to_ascii_lowercase();
        macro_rules! num {
            () => {
                v.parse().map_err(|e| bad(format!("{e}")))?
            };
        }
        match k.as_str() {
            "a_exp" => self.a_exp = num!(),
            "b_exp" => self.b_exp = num!(),
            "tau" => self.tau = parse_rational(v).map_err(bad)?,
            "eps" => self.eps = parse_rational(v).map_err(bad)?,
            "gamma" => self.gamma = parse_rational(v).map_err(bad)?,
            "delta" => self.delta = parse_rational(v).map_err(bad)?,
            "c_slack" => self.c_slack = parse_rational(v).map_err(bad)?,
            "lll_delta" => self.lll_delta = parse_rational(v).map_err(bad)?,
            "mult" => self.mult = num!(),
            "t_shifts" => self.t_shifts = parse_opt(v).map_err(bad)?,
            "grid" => self.grid = parse_grid(v).map_err(bad)?,
            "z_cap" => self.z_cap = parse_opt(v).map_err(bad)?,
            "z0_attempts" => self.z0_attempts = num!(),
            "m" | "m_mod" => self.m_mod = parse_opt(v).map_err(bad)?,
            "n" | "n_mod" => self.n_mod = parse_opt(v).map_err(bad)?,
            "k" | "k_shift" => self.k_shift = num!(),
            "e" | "e_shift" => self.e_shift = num!(),
            "workers" => self.workers = num!(),
            "seed" => self.seed = num!(),
            "retry_cap" => self.retry_cap = num!(),
            "max_pairs" => self.max_pairs = parse_opt(v).map_err(bad)?,
            "max_dim" => self.max_dim = num!(),
            "adjust_modulus" => self.adjust_modulus = num!(),
            "reduce_violated" => self.reduce_violated = num!(),
            "bounds" => self.bounds = v.parse().map_err(bad)?,
            "x_bound" => self.x_bound = parse_opt(v).map_err(bad)?,
            "y_bound" => self.y_bound = parse_opt(v).map_err(bad)?,
            "output" => self.output = (!v.is_empty()).then(|| v.to_string()),
            "log" => self.log = (!v.is_empty()).then(|| v.to_string()),
            _ => return Err(ConfigError::UnknownKey(key.trim().to_string())),
        }
        Ok(())
    }

    /// Overlays the `key = value` lines of `text` on `self`.
    pub fn merge_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let mut c = Config::default();
        c.merge_text(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &std::path::Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
        Config::parse(&text)
    }

    /// Lattice parameters for one grid point.
    pub fn lattice_params(&self, mult: u32, tau: &BigRational) -> Result<LatticeParams, SmallRootsError> {
        let mut p = LatticeParams::new(mult, tau.clone(), self.eps.clone())?;
        if self.grid.is_none() {
            if let Some(t) = self.t_shifts {
                p.t_shifts = t;
            }
        }
        p.c_slack = self.c_slack.clone();
        p.lll_delta = self.lll_delta.clone();
        p.max_dim = self.max_dim;
        p.adjust_modulus = self.adjust_modulus;
        p.reduce_violated = self.reduce_violated;
        p.validate()?;
        Ok(p)
    }

    /// The `(mult, τ)` settings tried for every pair.
    pub fn grid_points(&self) -> Vec<GridPoint> {
        self.grid.clone().unwrap_or_else(|| {
            vec![GridPoint {
                mult: self.mult,
                tau: self.tau.clone(),
            }]
        })
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let inv = |m: &str| Err(ConfigError::Invalid(m.into()));
        for g in self.grid_points() {
            if let Err(e) = self.lattice_params(g.mult, &g.tau) {
                return Err(ConfigError::Invalid(e.to_string()));
            }
        }
        if self.a_exp == 0 {
            return inv("A_exp must be >= 1");
        }
        if !self.gamma.is_positive() {
            return inv("gamma must be > 0");
        }
        if self.delta.is_negative() {
            return inv("delta must be >= 0");
        }
        if self.k_shift < BigInt::from(2) {
            return inv("k must be >= 2");
        }
        for (name, m) in [("m", &self.m_mod), ("n", &self.n_mod)] {
            if matches!(m, Some(v) if *v < BigInt::from(2)) {
                return Err(ConfigError::Invalid(format!("{name} must be >= 2")));
            }
        }
        for (name, b) in [("x_bound", &self.x_bound), ("y_bound", &self.y_bound)] {
            if matches!(b, Some(v) if !v.is_positive()) {
                return Err(ConfigError::Invalid(format!("{name} must be >= 1")));
            }
        }
        if self.z0_attempts == 0 {
            return inv("z0_attempts must be >= 1");
        }
        Ok(())
    }
}
