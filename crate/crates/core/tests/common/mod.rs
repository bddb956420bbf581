//! Random instance generators and single-instance property checks shared
//! by the property suites and the acceptance harness.
#![allow(dead_code)]

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trifactor::arith::{is_prime, next_prime};
use trifactor::factorizer::{construct_poly, FactorError, FactorInstance};
use trifactor::lattice::{gram_schmidt, lll_reduce, lovasz_holds, size_reduced, IntBasis};
use trifactor::poly::newton_identities;
use trifactor::poly::NewtonDirection;
use trifactor::resultant::{det_integer, discriminant, resultant};
use trifactor::smallroots::{find_independent_polys, LatticeParams, RootBounds};
use trifactor::uni;
use trifactor::{MultiPoly, Monomial, UniPoly};

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn nonzero(r: &mut ChaCha8Rng, c: i64) -> i64 {
    loop {
        let v = r.random_range(-c..=c);
        if v != 0 {
            return v;
        }
    }
}

/// Degree exactly `deg`, coefficients in `[-c, c]`.
pub fn rand_uni(r: &mut ChaCha8Rng, deg: usize, c: i64) -> UniPoly {
    let mut v: Vec<i64> = (0..deg).map(|_| r.random_range(-c..=c)).collect();
    v.push(nonzero(r, c));
    UniPoly::from_i64(&v)
}

pub fn rand_monic(r: &mut ChaCha8Rng, deg: usize, c: i64) -> UniPoly {
    let mut v: Vec<i64> = (0..deg).map(|_| r.random_range(-c..=c)).collect();
    v.push(1);
    UniPoly::from_i64(&v)
}

/// Up to `terms` random terms with per-variable degree at most `d`.
pub fn rand_multi(r: &mut ChaCha8Rng, arity: usize, d: u32, c: i64, terms: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(arity);
    for _ in 0..terms {
        let e: Vec<u32> = (0..arity).map(|_| r.random_range(0..=d)).collect();
        out = &out + &MultiPoly::monomial(Monomial(e), nonzero(r, c));
    }
    out
}

/// Random prime with exactly `bits` bits.
pub fn rand_prime(r: &mut ChaCha8Rng, bits: u32) -> BigInt {
    loop {
        let lo = BigInt::one() << (bits - 1);
        let x = &lo + BigInt::from(r.random_range(0..u64::MAX)) % &lo;
        let p = next_prime(&x);
        if p.bits() == bits as u64 {
            return p;
        }
    }
}

fn numeric(f: &UniPoly) -> Vec<uni::ComplexApprox> {
    uni::numeric_roots(f, uni::DEFAULT_TOL).expect("numeric oracle converges")
}

fn err<T: std::fmt::Debug>(what: &str, ctx: T) -> Check {
    Err(format!("{what}: {ctx:?}"))
}

// ---- polynomials ----

pub fn check_scale_eval(f: &MultiPoly, bounds: &[BigInt], p: &[BigInt]) -> Check {
    let lhs = f.scale_vars(bounds).unwrap().eval(p).unwrap();
    let q: Vec<BigInt> = bounds.iter().zip(p).map(|(a, x)| a * x).collect();
    if lhs != f.eval(&q).unwrap() {
        return err("scale_vars/eval", f.to_string());
    }
    Ok(())
}

pub fn check_norm_sandwich(f: &MultiPoly) -> Check {
    let h = f.height();
    let n2 = f.norm2_sq();
    let t = BigInt::from(f.num_terms());
    if !(&h * &h <= n2 && n2 <= &t * &h * &h) {
        return err("norm sandwich", f.to_string());
    }
    Ok(())
}

/// `‖f·h‖₂ ≥ 2^{−(d+1)^n+1}·‖f‖∞`, squared.
pub fn check_factor_norm(f: &MultiPoly, h: &MultiPoly, d: u32) -> Check {
    if f.is_zero() || h.is_zero() {
        return Ok(());
    }
    let n = f.arity() as u32;
    let e = (d + 1).pow(n) - 1;
    let g = f * h;
    let lhs = g.norm2_sq() << (2 * e as u64);
    let hf = f.height();
    if lhs < &hf * &hf {
        return err("factor norm inequality", (f.to_string(), h.to_string()));
    }
    Ok(())
}

pub fn check_newton_roundtrip(sigma: &[BigRational]) -> Check {
    let n = sigma.len();
    let rho = newton_identities(NewtonDirection::SymmetricToPower, sigma, n).unwrap();
    let back = newton_identities(NewtonDirection::PowerToSymmetric, &rho, n).unwrap();
    if back != sigma {
        return err("newton roundtrip", sigma);
    }
    Ok(())
}

pub fn check_content(f: &MultiPoly) -> Check {
    if f.is_zero() {
        return Ok(());
    }
    let (c, p) = f.content_and_primitive().unwrap();
    let ok = f.terms().all(|(_, a)| (a % &c).is_zero()) && p.content().is_one() && p.scalar_mul(&c) == *f;
    if !ok {
        return err("content/primitive", f.to_string());
    }
    Ok(())
}

// ---- univariate ----

/// Every numeric root lies strictly inside `cauchy_bound`.
pub fn check_cauchy(f: &UniPoly) -> Check {
    let bf = uni::cauchy_bound(f).unwrap().to_f64().unwrap();
    for z in numeric(f) {
        if z.abs() >= bf * (1.0 + 1e-12) {
            return err("root outside Cauchy bound", (f, z.abs(), bf));
        }
    }
    Ok(())
}

/// Sturm count over `[−R, R]` with `R = root_radius(f)` against the
/// numeric real roots of the squarefree part.
pub fn check_sturm(f: &UniPoly) -> Check {
    let bound = uni::root_radius(f).unwrap();
    let bf = bound.to_f64().unwrap();
    if numeric(f).iter().any(|z| z.abs() >= bf * (1.0 + 1e-12)) {
        return err("root outside root radius", f);
    }
    let iv = uni::Interval::new(-bound.clone(), bound);
    let sturm = uni::count_real_roots(f, &iv).unwrap();
    let sf = f.squarefree_part();
    let oracle = if sf.degree().unwrap_or(0) == 0 {
        0
    } else {
        numeric(&sf).iter().filter(|z| z.im.abs() < 1e-6).count()
    };
    if sturm != oracle {
        return err("Sturm count vs numeric", (f, sturm, oracle));
    }
    Ok(())
}

pub fn check_enestrom(f: &UniPoly) -> Check {
    let (lo, hi) = uni::enestrom_annulus(f).unwrap();
    let (lo, hi) = (lo.to_f64().unwrap(), hi.to_f64().unwrap());
    for z in numeric(f) {
        let a = z.abs();
        if a < lo * (1.0 - 1e-9) || a > hi * (1.0 + 1e-9) {
            return err("root outside Eneström annulus", (f, a, lo, hi));
        }
    }
    Ok(())
}

/// `f = ∏(x − r_i)·q` with small data so the Cauchy bound stays below
/// `limit`; `None` when it does not.
pub fn rand_int_root_poly(r: &mut ChaCha8Rng, limit: i64) -> Option<UniPoly> {
    let k = r.random_range(1..=3);
    let roots: Vec<BigInt> = (0..k).map(|_| b(r.random_range(-15..=15))).collect();
    let qd = r.random_range(0..=3);
    let q = rand_uni(r, qd, 9);
    let f = &UniPoly::from_roots(&roots) * &q;
    let bound = uni::cauchy_bound(&f).ok()?;
    (bound.ceil().to_integer() <= b(limit)).then_some(f)
}

/// Scans `[−R, R]` with `R = root_radius(f)`, which contains the range
/// `[−cauchy_bound, cauchy_bound]`.
pub fn check_integer_roots(f: &UniPoly) -> Check {
    let bound = uni::root_radius(f).unwrap().ceil().to_integer().to_i64().unwrap();
    let c: Vec<i128> = f.coeffs().iter().map(|a| a.to_i128().unwrap()).collect();
    let brute: Vec<BigInt> = (-bound..=bound)
        .filter(|&x| {
            let x = x as i128;
            c.iter().rev().fold(0i128, |acc, a| acc * x + a) == 0
        })
        .map(BigInt::from)
        .collect();
    let got = uni::integer_roots(f).unwrap();
    if got != brute {
        return err("integer_roots vs scan", (f, got, brute));
    }
    Ok(())
}

/// Squarefree, built from distinct integer roots and optionally an
/// irreducible quadratic with no real roots.
pub fn rand_known_factor_poly(r: &mut ChaCha8Rng) -> UniPoly {
    let k = r.random_range(1..=4);
    let mut roots: Vec<i64> = Vec::new();
    while roots.len() < k {
        let v = r.random_range(-9..=9);
        if !roots.contains(&v) {
            roots.push(v);
        }
    }
    let rb: Vec<BigInt> = roots.into_iter().map(BigInt::from).collect();
    let mut f = UniPoly::from_roots(&rb);
    if k < 2 || r.random_bool(0.5) {
        let s = r.random_range(1..=20);
        f = &f * &UniPoly::from_i64(&[s, r.random_range(-1..=1), 1]);
    }
    f
}

/// Real-rooted squarefree input must give `all_real`.
pub fn check_laguerre(f: &UniPoly) -> Check {
    let v = uni::laguerre_all_real(f).unwrap();
    let all_real = numeric(f).iter().all(|z| z.im.abs() < 1e-6);
    if all_real && !v.all_real {
        return err("Laguerre misses a real-rooted polynomial", f);
    }
    Ok(())
}

/// The verdict agrees with the numeric oracle in both directions.
pub fn check_laguerre_iff(f: &UniPoly) -> Check {
    let v = uni::laguerre_all_real(f).unwrap();
    let all_real = numeric(f).iter().all(|z| z.im.abs() < 1e-6);
    if all_real != v.all_real {
        return err("Laguerre verdict vs numeric", (f, v.all_real, all_real));
    }
    Ok(())
}

pub fn check_erdos_turan(f: &UniPoly, alpha: f64, beta: f64) -> Check {
    let e = uni::erdos_turan_defect(f, alpha, beta).unwrap();
    if !e.holds {
        return err("Erdős–Turán violated", (f, alpha, beta, e));
    }
    Ok(())
}

pub fn check_separation(f: &UniPoly) -> Check {
    let s = uni::separation_lower_bound(f).unwrap();
    let z = numeric(f);
    let mut acc = 0.0;
    let mut pairs = 0.0;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            acc += (z[i].z() - z[j].z()).norm().ln();
            pairs += 1.0;
        }
    }
    let gm = (acc / pairs).exp();
    if s > gm * (1.0 + 1e-6) {
        return err("separation bound above geometric mean", (f, s, gm));
    }
    Ok(())
}

pub fn check_hermite(f: &UniPoly) -> Check {
    if uni::hermite_real_root_test(f).unwrap() {
        let n = f.degree().unwrap();
        let z = numeric(f);
        let real = z.iter().filter(|r| r.im.abs() < 1e-6).count();
        if real != n || f.squarefree_part().degree() != Some(n) {
            return err("Hermite test fired without n distinct real roots", f);
        }
    }
    Ok(())
}

/// Coefficient bounds for the factor `g` of `f = g·h`. The `‖f‖₂` bound
/// is asserted; whether the `‖f‖∞` bound held is returned.
pub fn check_mignotte(g: &UniPoly, h: &UniPoly) -> Result<bool, String> {
    let f = g * h;
    let n = f.degree().unwrap() as u64;
    let m = g.degree().unwrap() as u64;
    let norm2 = f.norm2_sq().to_f64().unwrap().sqrt();
    let mut first_ok = true;
    for k in 0..=m {
        let (i, ii) = uni::mignotte_factor_bound(n, m, k, &f.height(), norm2, &f.lead()).unwrap();
        let bk = g.coeff(k as usize).abs();
        if bk.to_f64().unwrap() > ii * (1.0 + 1e-12) {
            return Err(format!("factor coefficient bound: g = {g:?}, h = {h:?}, k = {k}, bound {ii}"));
        }
        first_ok &= bk <= i;
    }
    Ok(first_ok)
}

// ---- resultants ----

pub fn check_reverse(f: &MultiPoly, g: &MultiPoly, var: usize) -> Check {
    let (Ok(a), Ok(bb)) = (resultant(f, g, var), resultant(g, f, var)) else {
        return Ok(());
    };
    let km = f.degree_in(var).unwrap() * g.degree_in(var).unwrap();
    let want = if km % 2 == 1 { -a } else { a };
    if bb != want {
        return err("reverse law", (f.to_string(), g.to_string()));
    }
    Ok(())
}

pub fn check_multiplicative(f1: &MultiPoly, f2: &MultiPoly, g: &MultiPoly, var: usize) -> Check {
    if g.degree_in(var).unwrap_or(0) == 0 || f1.is_zero() || f2.is_zero() {
        return Ok(());
    }
    let lhs = resultant(&(f1 * f2), g, var).unwrap();
    let rhs = &resultant(f1, g, var).unwrap() * &resultant(f2, g, var).unwrap();
    if lhs != rhs {
        return err("multiplicativity", (f1.to_string(), f2.to_string(), g.to_string()));
    }
    Ok(())
}

fn uni_res(f: &UniPoly, g: &UniPoly) -> BigInt {
    resultant(&MultiPoly::from_uni(f, 1, 0), &MultiPoly::from_uni(g, 1, 0), 0)
        .unwrap()
        .constant_term()
}

pub fn check_root_formula(roots: &[BigInt], g: &UniPoly) -> Check {
    let f = UniPoly::from_roots(roots);
    let prod = roots.iter().fold(BigInt::one(), |acc, a| acc * g.eval(a));
    if uni_res(&f, g) != prod {
        return err("root formula", (roots, g));
    }
    Ok(())
}

fn mat_mul(a: &[Vec<BigInt>], c: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &c[k][j]).sum()).collect())
        .collect()
}

/// `Res(f, g) = det g(C_f)` for monic `f`.
pub fn check_companion(f: &UniPoly, g: &UniPoly) -> Check {
    let n = f.degree().unwrap();
    let fc = f.coeffs();
    let mut comp = vec![vec![BigInt::zero(); n]; n];
    for i in 1..n {
        comp[i][i - 1] = BigInt::one();
    }
    for (i, row) in comp.iter_mut().enumerate() {
        row[n - 1] = -&fc[i];
    }
    let mut acc = vec![vec![BigInt::zero(); n]; n];
    for a in g.coeffs().iter().rev() {
        acc = mat_mul(&acc, &comp);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += a;
        }
    }
    if det_integer(&acc) != uni_res(f, g) {
        return err("companion identity", (f, g));
    }
    Ok(())
}

pub fn check_zero_iff_gcd(f: &UniPoly, g: &UniPoly) -> Check {
    let zero = uni_res(f, g).is_zero();
    let common = f.gcd(g).degree().unwrap_or(0) > 0;
    if zero != common {
        return err("Res = 0 iff common factor", (f, g));
    }
    Ok(())
}

pub fn check_disc_product(f: &UniPoly, g: &UniPoly) -> Check {
    let m = |u: &UniPoly| MultiPoly::from_uni(u, 1, 0);
    let d = |u: &UniPoly| discriminant(&m(u), 0).unwrap().constant_term();
    let r = uni_res(f, g);
    if d(&(f * g)) != d(f) * d(g) * &r * &r {
        return err("discriminant product rule", (f, g));
    }
    Ok(())
}

// ---- lattices ----

pub fn rand_basis(r: &mut ChaCha8Rng, rows: usize, cols: usize, c: i64) -> IntBasis {
    loop {
        let m: Vec<Vec<BigInt>> = (0..rows)
            .map(|_| (0..cols).map(|_| b(r.random_range(-c..=c))).collect())
            .collect();
        let basis = IntBasis::new(m).unwrap();
        if !basis.gram_det().is_zero() {
            return basis;
        }
    }
}

pub fn check_lll(input: &IntBasis) -> Check {
    let delta = BigRational::new(3.into(), 4.into());
    let out = lll_reduce(input, &delta).unwrap();
    let g = gram_schmidt(&out.basis).unwrap();
    if !size_reduced(&g) || !lovasz_holds(&g, &delta) {
        return err("LLL conditions", input.rows());
    }
    if out.basis.gram_det() != input.gram_det() {
        return err("lattice volume changed", input.rows());
    }
    let u = &out.transform;
    let prod: Vec<Vec<BigInt>> = u
        .iter()
        .map(|urow| {
            (0..input.dim())
                .map(|j| urow.iter().zip(input.rows()).map(|(a, row)| a * &row[j]).sum())
                .collect()
        })
        .collect();
    if prod != out.basis.rows() {
        return err("transform·input ≠ output", input.rows());
    }
    if det_integer(u).abs() != BigInt::one() {
        return err("transform not unimodular", input.rows());
    }
    // ‖b1‖ ≤ 2^{(d−1)/4}·vol^{1/d}  ⇔  ‖b1‖^{4d} ≤ 2^{d(d−1)}·vol⁴ = 2^{d(d−1)}·gram².
    let d = input.num_rows() as u64;
    let b1 = out.basis.row_norm_sq(0);
    let gram = input.gram_det();
    if num_traits::pow(b1, 2 * d as usize) > (&gram * &gram) << (d * (d - 1)) {
        return err("first-vector bound", input.rows());
    }
    Ok(())
}

fn gauss_shortest(mut u: [i128; 2], mut v: [i128; 2]) -> i128 {
    let n = |a: [i128; 2]| a[0] * a[0] + a[1] * a[1];
    loop {
        if n(u) > n(v) {
            std::mem::swap(&mut u, &mut v);
        }
        let num = u[0] * v[0] + u[1] * v[1];
        let den = n(u);
        // nearest integer to num/den
        let q = (2 * num + den).div_euclid(2 * den);
        if q == 0 {
            return n(u);
        }
        v = [v[0] - q * u[0], v[1] - q * u[1]];
    }
}

/// LLL in 2D never beats the Gauss–Lagrange minimum and matches it when
/// the output pair is ordered by length.
pub fn check_gauss_2d(input: &IntBasis) -> Check {
    let r = input.rows();
    let to = |i: usize| [r[i][0].to_i128().unwrap(), r[i][1].to_i128().unwrap()];
    let lam = BigInt::from(gauss_shortest(to(0), to(1)));
    let out = lll_reduce(input, &BigRational::new(3.into(), 4.into())).unwrap().basis;
    let (n1, n2) = (out.row_norm_sq(0), out.row_norm_sq(1));
    if n1 < lam || (n1 <= n2 && n1 != lam) {
        return err("2D reduction vs Gauss–Lagrange", (input.rows(), n1, lam));
    }
    Ok(())
}

/// Planted instance `c4·xy + c3·x + c2·y + c1·z + c0` with a root strictly
/// inside random bounds.
pub fn rand_planted(r: &mut ChaCha8Rng) -> (MultiPoly, Vec<BigInt>, RootBounds) {
    loop {
        let root = [r.random_range(-30..=30i64), r.random_range(-30..=30), r.random_range(-5..=5)];
        let c: Vec<i64> = (0..4).map(|_| nonzero(r, 1 << 20)).collect();
        let c0 = -(c[0] * root[0] * root[1] + c[1] * root[0] + c[2] * root[1] + c[3] * root[2]);
        if c0 == 0 {
            continue;
        }
        let f = MultiPoly::from_terms(
            3,
            vec![
                (vec![1, 1, 0], b(c[0])),
                (vec![1, 0, 0], b(c[1])),
                (vec![0, 1, 0], b(c[2])),
                (vec![0, 0, 1], b(c[3])),
                (vec![0, 0, 0], b(c0)),
            ],
        )
        .unwrap();
        let (_, f) = f.content_and_primitive().unwrap();
        let bound = |v: i64, r: &mut ChaCha8Rng| b(v.abs() + 1 + r.random_range(0..4));
        let rb = RootBounds::new(bound(root[0], r), bound(root[1], r), bound(root[2], r)).unwrap();
        return (f, root.iter().map(|&v| b(v)).collect(), rb);
    }
}

/// Every reduced vector passing the Howgrave-Graham check vanishes at the
/// planted root. Returns whether the engine produced a verdict.
pub fn check_hg_planted(f: &MultiPoly, root: &[BigInt], rb: &RootBounds, params: &LatticeParams) -> Result<bool, String> {
    let out = match find_independent_polys(f, rb, params, Some(root)) {
        Ok(o) => o,
        Err(_) => return Ok(false),
    };
    match out.diagnostics.planted_verified {
        Some(true) => {}
        Some(false) => return Err(format!("HG-passing vector misses planted root: {f} at {root:?}")),
        None => return Ok(false),
    }
    for h in &out.candidates {
        if !h.eval(root).unwrap().is_zero() {
            return Err(format!("candidate {h} misses planted root"));
        }
    }
    Ok(out.diagnostics.lattice_reduced)
}

// ---- factorizer ----

/// Random `N = p·q` of `bits` bits and a residue instance read from the
/// factors. Returns the instance, the factors and the construction time.
pub fn rand_construct_case(r: &mut ChaCha8Rng, bits: u32) -> (FactorInstance, BigInt, BigInt) {
    let pb = bits / 2;
    let qb = bits - pb;
    let p = rand_prime(r, pb.max(3));
    let q = rand_prime(r, qb.max(3));
    let pick = |r: &mut ChaCha8Rng, x: &BigInt| loop {
        let m = b(r.random_range(2..=1000));
        if !(x % &m).is_zero() {
            return m;
        }
    };
    let m = pick(r, &p);
    let nn = pick(r, &q);
    let (c, d) = (&p % &m, &q % &nn);
    let mut z0 = r.random_range(1..=40i64);
    loop {
        let inst = FactorInstance::new(&p * &q, m.clone(), nn.clone(), c.clone(), d.clone(), b(2), b(1), b(z0));
        if is_prime(&inst.r_prime) {
            return (inst, p, q);
        }
        z0 += 1;
    }
}

pub fn check_construct(inst: &FactorInstance, p: &BigInt, q: &BigInt, r: &mut ChaCha8Rng) -> Result<Duration, String> {
    let t0 = Instant::now();
    let cp = match construct_poly(inst) {
        Ok(cp) => cp,
        Err(e @ FactorError::RNotPrime(_)) => return Err(e.to_string()),
        Err(e) => return Err(format!("{e} for {inst:?}")),
    };
    let dt = t0.elapsed();
    let root = inst.root_for(p, q).ok_or("residue hypothesis")?;
    if !cp.f.eval(&root).unwrap().is_zero() || !cp.raw.eval(&root).unwrap().is_zero() {
        return Err(format!("f does not vanish at the root for {inst:?}"));
    }
    if !cp.f.content().is_one() || !cp.irreducibility_witness() {
        return Err(format!("content/irreducibility witness for {inst:?}"));
    }
    let c0 = cp.raw.constant_term().abs();
    let floor = &inst.r_prime * &inst.n - &inst.c_res * &inst.d_res * &inst.e_shift;
    if c0 < floor {
        return Err(format!("|c0| < rN − cde for {inst:?}"));
    }
    let bounds: Vec<BigInt> = (0..3).map(|_| b(r.random_range(1..1 << 20))).collect();
    if cp.raw.scale_vars(&bounds).unwrap().height() < c0 {
        return Err(format!("scaled height below |c0| for {inst:?}"));
    }
    Ok(dt)
}

pub fn rational(a: i64, d: i64) -> BigRational {
    BigRational::new(a.into(), d.into())
}
