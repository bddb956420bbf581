//! Command-line front end. [`run`] parses the arguments, executes one
//! subcommand and returns the process exit code:
//! 0 success, 1 run completed without a result, 2 usage or input error,
//! 3 internal invariant violation.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use trifactor::arith::next_prime;
use trifactor::config::Config;
use trifactor::factorizer::{
    append_jsonl, construct_poly, known_bits_factor, residue_search, ExperimentReport, FactorError, FactorInstance,
    Outcome,
};
use trifactor::lattice::{lll_core, IntBasis};
use trifactor::resultant::{discriminant, resultant};
use trifactor::smallroots::{
    admissible_sets, bound_bivariate, bound_corollary52, bound_ernst, bound_general, find_independent_polys,
    gamma_feasibility, BoundVerdict, LatticeParams, RootBounds, Status,
};
use trifactor::uni;
use trifactor::{MultiPoly, UniPoly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "trifactor", version, about = "Trivariate small-roots factoring experiments")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct RunOpts {
    /// Config file of `key = value` lines.
    #[arg(long, env = "TRIFACTOR_CONFIG")]
    config: Option<PathBuf>,
    /// Override one config key; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    workers: Option<usize>,
    /// Write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append the JSON report to this JSONL file.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BoundKind {
    Ernst,
    General,
    Bivariate,
    Cor52,
    Gamma,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Factor N by searching residue pairs (c, d).
    Factor {
        n: String,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Factor N given p ≡ c (mod m).
    KnownBits {
        n: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        c: String,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Print the polynomial f for one residue pair.
    Construct {
        n: String,
        #[arg(long)]
        m: String,
        #[arg(long = "n")]
        n_mod: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        d: String,
        #[arg(long, default_value = "2")]
        k: String,
        #[arg(long, default_value = "1")]
        e: String,
        #[arg(long, default_value = "1")]
        z0: String,
        /// Known factor p; prints the root (x0, y0, z0) when q is given too.
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
    },
    /// Run the lattice step on a trivariate polynomial.
    Smallroots {
        #[arg(long)]
        poly: String,
        /// `X,Y,Z`; alternatively give --X, --Y and --Z.
        #[arg(long)]
        bounds: Option<String>,
        #[arg(long = "X")]
        big_x: Option<String>,
        #[arg(long = "Y")]
        big_y: Option<String>,
        #[arg(long = "Z")]
        big_z: Option<String>,
        #[arg(long, default_value_t = 1)]
        mult: u32,
        #[arg(long, default_value = "0")]
        tau: String,
        #[arg(long, default_value = "1/100")]
        eps: String,
        #[arg(long)]
        t_shifts: Option<u32>,
        #[arg(long)]
        max_dim: Option<usize>,
        /// Fail on a constant term sharing a factor with W instead of adjusting.
        #[arg(long)]
        strict_modulus: bool,
        /// Planted root `x,y,z` to verify against.
        #[arg(long)]
        root: Option<String>,
    },
    /// Evaluate one of the size bounds.
    Bounds {
        #[arg(long, value_enum)]
        mode: BoundKind,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        z: Option<String>,
        /// Height W; computed from --poly and the bounds when omitted.
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, default_value = "0")]
        tau: String,
        #[arg(long, default_value = "1/100")]
        eps: String,
        #[arg(long, default_value = "1/100")]
        delta: String,
        #[arg(long, default_value_t = 1)]
        mult: u32,
        #[arg(long, default_value = "0")]
        c_slack: String,
        #[arg(long, default_value_t = 1)]
        d: u32,
        /// Bound on |x0·y0·z0| for cor52.
        #[arg(long)]
        prod: Option<String>,
    },
    /// Univariate analysis of a polynomial in x.
    Analyze {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = std::f64::consts::PI)]
        beta: f64,
        #[arg(long, default_value_t = 1000)]
        murty_limit: u64,
    },
    /// Mean number of real roots of random Gaussian polynomials.
    Kac {
        #[arg(long, default_value_t = 20)]
        degree: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Resultant (or discriminant) with respect to one variable.
    Resultant {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: Option<String>,
        #[arg(long, default_value = "y")]
        var: String,
        #[arg(long)]
        discriminant: bool,
    },
    /// LLL-reduce an integer basis: a JSON file of rows, or inline JSON.
    Lll {
        #[arg(long)]
        basis: String,
        #[arg(long, default_value = "3/4")]
        delta: String,
    },
    /// Time the lattice step over (mult, τ) on a generated instance.
    Bench {
        #[arg(long, default_value_t = 40)]
        bits: u64,
        #[arg(long, default_value = "1,2")]
        mults: String,
        #[arg(long, default_value_t = 32)]
        max_dim: usize,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failure(String),
}

impl From<FactorError> for CliError {
    fn from(e: FactorError) -> Self {
        match e {
            FactorError::NTooSmall | FactorError::NPrime | FactorError::InvalidInstance(_) => {
                CliError::Usage(e.to_string())
            }
            FactorError::DegenerateResidue | FactorError::RNotPrime(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

struct Reply {
    text: String,
    json: Value,
    code: i32,
}

impl Reply {
    fn ok(text: String, json: Value) -> Self {
        Reply { text, json, code: EXIT_OK }
    }
}

type CmdResult = Result<Reply, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn big(s: &str, what: &str) -> Result<BigInt, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: expected an integer, got `{s}`")))
}

fn rational(s: &str, what: &str) -> Result<BigRational, CliError> {
    let s = s.trim();
    if s.contains('.') {
        return usage(format!("{what}: write rationals as p/q"));
    }
    s.parse()
        .map_err(|_| CliError::Usage(format!("{what}: expected p/q, got `{s}`")))
}

fn big_list(s: &str, what: &str) -> Result<Vec<BigInt>, CliError> {
    s.split(',').map(|t| big(t, what)).collect()
}

fn poly3(s: &str) -> Result<MultiPoly, CliError> {
    MultiPoly::parse_with_arity(s, 3).map_err(|e| CliError::Usage(format!("polynomial: {e}")))
}

fn verdict_json(v: &BoundVerdict) -> Value {
    json!({ "holds": v.holds, "log2_margin": v.log2_margin })
}

fn verdict_text(v: &BoundVerdict) -> String {
    format!("holds: {}\nlog2_margin: {:.3}", v.holds, v.log2_margin)
}

fn load_config(run: &RunOpts) -> Result<Config, CliError> {
    let mut c = Config::default();
    if let Some(path) = &run.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        c.merge_text(&text).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    for kv in &run.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got `{kv}`")))?;
        c.set(k, v).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    if let Some(w) = run.workers {
        c.workers = w;
    }
    c.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(c)
}

fn save_report(report: &ExperimentReport, run: &RunOpts, cfg: &Config) -> Result<(), CliError> {
    let io = |p: &Path, e: std::io::Error| CliError::Failure(format!("{}: {e}", p.display()));
    let out = run.out.clone().or_else(|| cfg.output.clone().map(PathBuf::from));
    if let Some(p) = out {
        std::fs::write(&p, report.to_json() + "\n").map_err(|e| io(&p, e))?;
    }
    let log = run.log.clone().or_else(|| cfg.log.clone().map(PathBuf::from));
    if let Some(p) = log {
        append_jsonl(&p, report).map_err(|e| io(&p, e))?;
    }
    Ok(())
}

fn report_reply(report: ExperimentReport, run: &RunOpts, cfg: &Config) -> CmdResult {
    save_report(&report, run, cfg)?;
    let mut text = format!(
        "N = {}\nmoduli: m = {}, n = {}\npairs tested: {}\n",
        report.n, report.moduli.m, report.moduli.n, report.pairs_tested
    );
    let code = match report.outcome {
        Outcome::Factored => {
            let f = report.factors.as_ref().expect("factored reports carry factors");
            text += &format!(
                "outcome: Factored ({})\nfactors: {} {}",
                report.method.as_deref().unwrap_or("?"),
                f[0],
                f[1]
            );
            EXIT_OK
        }
        Outcome::Unfactored => {
            text += &format!("outcome: Unfactored ({})", report.failure.as_deref().unwrap_or("?"));
            EXIT_FAILURE
        }
    };
    let json: Value = serde_json::from_str(&report.to_json()).expect("report is JSON");
    Ok(Reply { text, json, code })
}

fn cmd_factor(n: &str, run: &RunOpts) -> CmdResult {
    let cfg = load_config(run)?;
    let n = big(n, "N")?;
    let report = residue_search(&n, &cfg)?;
    report_reply(report, run, &cfg)
}

fn cmd_known_bits(n: &str, m: &str, c: &str, run: &RunOpts) -> CmdResult {
    let cfg = load_config(run)?;
    let report = known_bits_factor(&big(n, "N")?, &big(m, "m")?, &big(c, "c")?, &cfg)?;
    report_reply(report, run, &cfg)
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    n: &str,
    m: &str,
    n_mod: &str,
    c: &str,
    d: &str,
    k: &str,
    e: &str,
    z0: &str,
    p: Option<&str>,
    q: Option<&str>,
) -> CmdResult {
    let inst = FactorInstance::new(
        big(n, "N")?,
        big(m, "m")?,
        big(n_mod, "n")?,
        big(c, "c")?,
        big(d, "d")?,
        big(k, "k")?,
        big(e, "e")?,
        big(z0, "z0")?,
    );
    let mut cp = construct_poly(&inst)?;
    if let (Some(p), Some(q)) = (p, q) {
        cp.root_hint = inst.root_for(&big(p, "p")?, &big(q, "q")?);
    }
    let mut text = format!(
        "{}\nraw: {}\ncontent: {}\nraw height: {}\nr: {} ({:?})",
        cp.f, cp.raw, cp.content, cp.raw_height, inst.r_prime, cp.r_class
    );
    if let Some(root) = &cp.root_hint {
        text += &format!("\nroot: ({}, {}, {})", root[0], root[1], root[2]);
    }
    let json = serde_json::to_value(&cp).expect("serializable");
    Ok(Reply::ok(text, json))
}

#[allow(clippy::too_many_arguments)]
fn cmd_smallroots(
    poly: &str,
    bounds: &str,
    mult: u32,
    tau: &str,
    eps: &str,
    t_shifts: Option<u32>,
    max_dim: Option<usize>,
    strict: bool,
    root: Option<&str>,
) -> CmdResult {
    let f = poly3(poly)?;
    let b = big_list(bounds, "bounds")?;
    if b.len() != 3 {
        return usage("bounds: expected X,Y,Z");
    }
    let rb = RootBounds::new(b[0].clone(), b[1].clone(), b[2].clone()).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut params =
        LatticeParams::new(mult, rational(tau, "tau")?, rational(eps, "eps")?).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(t) = t_shifts {
        params.t_shifts = t;
    }
    if let Some(d) = max_dim {
        params.max_dim = d;
    }
    params.adjust_modulus = !strict;
    let planted = root.map(|r| big_list(r, "root")).transpose()?;
    let out = find_independent_polys(&f, &rb, &params, planted.as_deref()).map_err(|e| CliError::Usage(e.to_string()))?;
    let dg = &out.diagnostics;
    let mut text = format!(
        "status: {:?}\ndim: {}\nW: {}\nR: {}\nernst: {} ({:.3})\nhg l2 pass: {}\ndependent rejected: {}",
        out.status, dg.dim, dg.w, dg.r, dg.ernst.holds, dg.ernst.log2_margin, dg.hg_l2_pass, dg.dependent_rejected
    );
    if let Some(v) = dg.planted_verified {
        text += &format!("\nplanted root verified: {v}");
    }
    for h in &out.candidates {
        text += &format!("\ncandidate: {h}");
    }
    let code = if out.status == Status::Solved { EXIT_OK } else { EXIT_FAILURE };
    let json = serde_json::to_value(&out).expect("serializable");
    Ok(Reply { text, json, code })
}

struct BoundArgs<'a> {
    mode: BoundKind,
    x: Option<&'a str>,
    y: Option<&'a str>,
    z: Option<&'a str>,
    w: Option<&'a str>,
    poly: Option<&'a str>,
    tau: &'a str,
    eps: &'a str,
    delta: &'a str,
    mult: u32,
    c_slack: &'a str,
    d: u32,
    prod: Option<&'a str>,
}

fn cmd_bounds(a: BoundArgs) -> CmdResult {
    let need = |v: Option<&str>, what: &str| -> Result<BigInt, CliError> {
        match v {
            Some(s) => big(s, what),
            None => usage(format!("--{what} is required for this mode")),
        }
    };
    let bad = |e: trifactor::smallroots::SmallRootsError| CliError::Usage(e.to_string());
    let tau = rational(a.tau, "tau")?;
    let eps = rational(a.eps, "eps")?;
    let xyz = || -> Result<RootBounds, CliError> {
        RootBounds::new(need(a.x, "x")?, need(a.y, "y")?, need(a.z, "z")?).map_err(bad)
    };
    let height = |rb: &RootBounds| -> Result<BigInt, CliError> {
        match (a.w, a.poly) {
            (Some(w), _) => big(w, "w"),
            (None, Some(p)) => Ok(poly3(p)?.scale_vars(&rb.as_vec()).expect("arity 3").height()),
            (None, None) => usage("give --w or --poly"),
        }
    };
    let v = match a.mode {
        BoundKind::Gamma => {
            let g = gamma_feasibility(&tau, &rational(a.delta, "delta")?, &eps).map_err(bad)?;
            return Ok(Reply::ok(g.to_string(), json!({ "gamma_min": g.to_string() })));
        }
        BoundKind::Ernst => {
            let rb = xyz()?;
            bound_ernst(&rb, &height(&rb)?, &tau, &eps).map_err(bad)?
        }
        BoundKind::General => {
            let rb = xyz()?;
            let f = match a.poly {
                Some(p) => poly3(p)?,
                None => return usage("--poly is required for the general bound"),
            };
            let params = LatticeParams::new(a.mult, tau, eps).map_err(bad)?;
            let sets = admissible_sets(&f, &params).map_err(bad)?;
            let dims = (
                f.degree_in(0).unwrap_or(0),
                f.degree_in(1).unwrap_or(0),
                f.degree_in(2).unwrap_or(0),
            );
            bound_general(&rb, &height(&rb)?, &sets, dims, &rational(a.c_slack, "c_slack")?).map_err(bad)?
        }
        BoundKind::Bivariate => {
            let w = match a.w {
                Some(w) => big(w, "w")?,
                None => return usage("--w is required for the bivariate bound"),
            };
            bound_bivariate(&need(a.x, "x")?, &need(a.y, "y")?, &w, a.d).map_err(bad)?
        }
        BoundKind::Cor52 => {
            let w = match a.w {
                Some(w) => big(w, "w")?,
                None => return usage("--w is required for cor52"),
            };
            bound_corollary52(&need(a.prod, "prod")?, &w, a.d).map_err(bad)?
        }
    };
    Ok(Reply {
        text: verdict_text(&v),
        json: verdict_json(&v),
        code: if v.holds { EXIT_OK } else { EXIT_FAILURE },
    })
}

fn uni_poly(s: &str) -> Result<UniPoly, CliError> {
    let m = MultiPoly::parse_with_arity(s, 1).map_err(|e| CliError::Usage(format!("polynomial: {e}")))?;
    m.to_uni(0).ok_or_else(|| CliError::Usage("expected a polynomial in x".into()))
}

fn cmd_analyze(poly: &str, alpha: f64, beta: f64, murty_limit: u64) -> CmdResult {
    let f = uni_poly(poly)?;
    if f.is_zero() {
        return usage("zero polynomial");
    }
    fn item<T: serde::Serialize, E: std::fmt::Display>(r: Result<T, E>) -> Value {
        match r {
            Ok(v) => serde_json::to_value(v).expect("serializable"),
            Err(e) => json!({ "error": e.to_string() }),
        }
    }
    let rat_pair = |r: (BigRational, BigRational)| [r.0.to_string(), r.1.to_string()];
    let mut obj = serde_json::Map::new();
    obj.insert("degree".into(), json!(f.degree()));
    obj.insert("height".into(), json!(f.height().to_string()));
    obj.insert("cauchy_bound".into(), item(uni::cauchy_bound(&f).map(|b| b.to_string())));
    obj.insert("enestrom_annulus".into(), item(uni::enestrom_annulus(&f).map(rat_pair)));
    obj.insert("real_roots".into(), item(uni::count_all_real_roots(&f)));
    obj.insert(
        "isolating_intervals".into(),
        item(uni::isolate_real_roots(&f).map(|v| v.into_iter().map(|i| rat_pair((i.lo, i.hi))).collect::<Vec<_>>())),
    );
    obj.insert(
        "integer_roots".into(),
        item(uni::integer_roots(&f).map(|v| v.iter().map(|r| r.to_string()).collect::<Vec<_>>())),
    );
    obj.insert("numeric_roots".into(), item(uni::numeric_roots(&f, uni::DEFAULT_TOL)));
    obj.insert("mahler_measure".into(), item(uni::mahler_measure(&f, uni::DEFAULT_TOL)));
    obj.insert("separation_bound".into(), item(uni::separation_lower_bound(&f)));
    obj.insert("laguerre".into(), item(uni::laguerre_all_real(&f)));
    obj.insert("hermite_all_real".into(), item(uni::hermite_real_root_test(&f)));
    obj.insert("murty".into(), item(uni::murty_irreducibility(&f, murty_limit)));
    obj.insert("erdos_turan".into(), item(uni::erdos_turan_defect(&f, alpha, beta)));
    obj.insert("positive_root_bound".into(), item(uni::positive_root_count_bound(&f)));
    let text = obj
        .iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Reply::ok(text, Value::Object(obj)))
}

fn cmd_kac(degree: usize, trials: u64, seed: u64) -> CmdResult {
    let k = uni::kac_estimate(degree, trials, seed).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = format!(
        "mean real roots: {:.4}\n(2/pi) ln n: {:.4}\ntrials: {}",
        k.mean, k.asymptotic, k.trials
    );
    Ok(Reply::ok(text, serde_json::to_value(k).expect("serializable")))
}

fn var_index(v: &str) -> Result<usize, CliError> {
    match v {
        "x" => Ok(0),
        "y" => Ok(1),
        "z" => Ok(2),
        _ => usage("--var must be x, y or z"),
    }
}

fn cmd_resultant(f: &str, g: Option<&str>, var: &str, disc: bool) -> CmdResult {
    let v = var_index(var)?;
    let fp = poly3(f)?;
    let r = if disc {
        discriminant(&fp, v)
    } else {
        let g = match g {
            Some(g) => poly3(g)?,
            None => return usage("a second polynomial is required"),
        };
        resultant(&fp, &g, v)
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Reply::ok(r.to_string(), json!({ "result": r.to_string() })))
}

fn parse_basis(s: &str) -> Result<IntBasis, CliError> {
    let text = if s.trim_start().starts_with('[') {
        s.to_string()
    } else {
        std::fs::read_to_string(s).map_err(|e| CliError::Usage(format!("{s}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("basis: {e}")))?;
    let rows = v.as_array().ok_or_else(|| CliError::Usage("basis must be a JSON array of rows".into()))?;
    let mut out = Vec::new();
    for row in rows {
        let row = row.as_array().ok_or_else(|| CliError::Usage("rows must be arrays".into()))?;
        let mut r = Vec::new();
        for x in row {
            let s = match x {
                Value::String(s) => s.clone(),
                Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                _ => return usage("entries must be integers or decimal strings"),
            };
            r.push(big(&s, "basis entry")?);
        }
        out.push(r);
    }
    IntBasis::new(out).map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_lll(basis: &str, delta: &str) -> CmdResult {
    let b = parse_basis(basis)?;
    let out = lll_core(&b, &rational(delta, "delta")?, false).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = out
        .basis
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n");
    let json = json!({ "basis": serde_json::to_value(&out.basis).expect("serializable"), "swaps": out.swaps });
    Ok(Reply::ok(text, json))
}

fn cmd_bench(bits: u64, mults: &str, max_dim: usize) -> CmdResult {
    if !(16..=512).contains(&bits) {
        return usage("--bits must lie in 16..=512");
    }
    let mults: Vec<u32> = mults
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| CliError::Usage("--mults: expected integers".into())))
        .collect::<Result<_, _>>()?;
    let half = bits / 2;
    let p = next_prime(&((BigInt::from(1) << (half - 1)) + 12345));
    let q = next_prime(&(&p + (BigInt::from(1) << (half - 3))));
    let n = &p * &q;
    let m = next_prime(&(&q >> 8u32));
    let (c, d) = (&p % &m, &q % &m);
    let inst = FactorInstance::new(n.clone(), m.clone(), m.clone(), c, d, 2.into(), 1.into(), 1.into());
    let cp = construct_poly(&inst)?;
    let root = inst.root_for(&p, &q).expect("residues match");
    let xb: BigInt = trifactor::arith::isqrt(&(&n * 2)) / &m + 1;
    let rb = RootBounds::new(xb.clone(), xb, 2.into()).expect("positive");
    let mut rows = Vec::new();
    let mut text = format!("N = {n} ({bits} bits), m = {m}\nmult  tau  dim  status  ms");
    for &mult in &mults {
        for qn in 0..=8 {
            let tau = BigRational::new(qn.into(), 4.into());
            let mut params = LatticeParams::new(mult, tau.clone(), BigRational::new(1.into(), 100.into()))
                .map_err(|e| CliError::Usage(e.to_string()))?;
            params.max_dim = max_dim;
            let t0 = Instant::now();
            let out = find_independent_polys(&cp.f, &rb, &params, Some(&root)).map_err(|e| CliError::Failure(e.to_string()))?;
            let ms = t0.elapsed().as_secs_f64() * 1e3;
            text += &format!("\n{mult}  {tau}  {}  {:?}  {ms:.1}", out.diagnostics.dim, out.status);
            rows.push(json!({
                "mult": mult, "tau": tau.to_string(), "dim": out.diagnostics.dim,
                "status": format!("{:?}", out.status), "ms": ms,
                "planted_verified": out.diagnostics.planted_verified,
            }));
        }
    }
    Ok(Reply::ok(text, json!({ "n": n.to_string(), "m": m.to_string(), "rows": rows })))
}

fn execute(cmd: &Cmd) -> CmdResult {
    match cmd {
        Cmd::Factor { n, run } => cmd_factor(n, run),
        Cmd::KnownBits { n, m, c, run } => cmd_known_bits(n, m, c, run),
        Cmd::Construct {
            n,
            m,
            n_mod,
            c,
            d,
            k,
            e,
            z0,
            p,
            q,
        } => cmd_construct(n, m, n_mod, c, d, k, e, z0, p.as_deref(), q.as_deref()),
        Cmd::Smallroots {
            poly,
            bounds,
            big_x,
            big_y,
            big_z,
            mult,
            tau,
            eps,
            t_shifts,
            max_dim,
            strict_modulus,
            root,
        } => {
            let bounds = match (bounds, big_x, big_y, big_z) {
                (Some(b), None, None, None) => b.clone(),
                (None, Some(x), Some(y), Some(z)) => format!("{x},{y},{z}"),
                _ => return usage("give either --bounds X,Y,Z or all of --X, --Y, --Z"),
            };
            cmd_smallroots(poly, &bounds, *mult, tau, eps, *t_shifts, *max_dim, *strict_modulus, root.as_deref())
        }
        Cmd::Bounds {
            mode,
            x,
            y,
            z,
            w,
            poly,
            tau,
            eps,
            delta,
            mult,
            c_slack,
            d,
            prod,
        } => cmd_bounds(BoundArgs {
            mode: *mode,
            x: x.as_deref(),
            y: y.as_deref(),
            z: z.as_deref(),
            w: w.as_deref(),
            poly: poly.as_deref(),
            tau,
            eps,
            delta,
            mult: *mult,
            c_slack,
            d: *d,
            prod: prod.as_deref(),
        }),
        Cmd::Analyze {
            poly,
            alpha,
            beta,
            murty_limit,
        } => cmd_analyze(poly, *alpha, *beta, *murty_limit),
        Cmd::Kac { degree, trials, seed } => cmd_kac(*degree, *trials, *seed),
        Cmd::Resultant { f, g, var, discriminant } => cmd_resultant(f, g.as_deref(), var, *discriminant),
        Cmd::Lll { basis, delta } => cmd_lll(basis, delta),
        Cmd::Bench { bits, mults, max_dim } => cmd_bench(*bits, mults, *max_dim),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = catch_unwind(AssertUnwindSafe(|| execute(&cli.cmd)));
    match result {
        Ok(Ok(reply)) => {
            let _ = if cli.json {
                writeln!(out, "{}", reply.json)
            } else {
                writeln!(out, "{}", reply.text)
            };
            reply.code
        }
        Ok(Err(CliError::Usage(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Ok(Err(CliError::Failure(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
        Err(_) => {
            let _ = writeln!(err, "error: internal invariant violated");
            EXIT_INVARIANT
        }
    }
}
