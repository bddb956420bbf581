//! Integer helpers: primality, next prime, binomials, exact roots.

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Outcome of a primality test.
///
/// Below 2^64 the Miller-Rabin witness set is deterministic, so `Prime`
/// is a proof there. Above 2^64 a passing Baillie-PSW test yields
/// `ProbablePrime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Primality {
    Composite,
    Prime,
    ProbablePrime,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn primality(n: &BigInt) -> Primality {
    if n < &BigInt::from(2) {
        return Primality::Composite;
    }
    for &p in SMALL_PRIMES.iter() {
        let p = BigInt::from(p);
        if n == &p {
            return Primality::Prime;
        }
        if (n % &p).is_zero() {
            return Primality::Composite;
        }
    }
    if n.bits() <= 64 {
        if SMALL_PRIMES
            .iter()
            .all(|&a| strong_probable_prime(n, &BigInt::from(a)))
        {
            Primality::Prime
        } else {
            Primality::Composite
        }
    } else if strong_probable_prime(n, &BigInt::from(2)) && strong_lucas_probable_prime(n) {
        Primality::ProbablePrime
    } else {
        Primality::Composite
    }
}

pub fn is_prime(n: &BigInt) -> bool {
    primality(n).is_prime()
}

/// Miller-Rabin round to base `a`; `n` odd and > 2.
fn strong_probable_prime(n: &BigInt, a: &BigInt) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1;
    let three = BigInt::from(3);
    let four = BigInt::from(4);
    let eight = BigInt::from(8);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = &n % &eight;
            if r == three || r == BigInt::from(5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Strong Lucas test with Selfridge parameters.
fn strong_lucas_probable_prime(n: &BigInt) -> bool {
    let r = n.sqrt();
    if &(&r * &r) == n {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        let j = jacobi(&d, n);
        if j == -1 {
            break;
        }
        if j == 0 && &d.abs() != n {
            return false;
        }
        d = if d.is_positive() { -(d + BigInt::from(2)) } else { -(d - BigInt::from(2)) };
    }
    let q = (BigInt::one() - &d) / BigInt::from(4);
    let half = |v: BigInt| -> BigInt {
        let v = if v.is_odd() { v + n } else { v };
        (v >> 1usize).mod_floor(n)
    };
    let np1 = n + BigInt::one();
    let s = np1.trailing_zeros().unwrap_or(0);
    let dd = &np1 >> s;
    // Binary ladder for U_k, V_k with P = 1.
    let mut u = BigInt::one();
    let mut v = BigInt::one();
    let mut qk = q.mod_floor(n);
    let bits = dd.bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - &qk * BigInt::from(2)).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if dd.bit(i) {
            let nu = half(&u + &v);
            let nv = half(&v + &d * &u);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * BigInt::from(2)).mod_floor(n);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(n);
    }
    false
}

/// Smallest prime `>= n`.
pub fn next_prime(n: &BigInt) -> BigInt {
    let mut c = if n < &BigInt::from(2) {
        BigInt::from(2)
    } else {
        n.clone()
    };
    while !is_prime(&c) {
        c += 1;
    }
    c
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative");
    n.sqrt()
}

/// Approximate natural log of a positive integer, usable for huge values.
pub fn ln_big(n: &BigInt) -> f64 {
    let n = n.abs();
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        if let Some(f) = n.to_f64() {
            return f.ln();
        }
    }
    let shift = bits - 64;
    let top = (&n >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn log2_big(n: &BigInt) -> f64 {
    ln_big(n) / std::f64::consts::LN_2
}

/// True when `r` has a prime factor larger than `r^{4/5}`.
///
/// Equivalently `r = a·P` with `P` prime and `a^5 < r`. Cofactors are
/// scanned up to `cap`.
pub fn is_near_prime(r: &BigInt, cap: u64) -> bool {
    if r < &BigInt::from(2) {
        return false;
    }
    let mut a = 1u64;
    while a <= cap {
        let ab = BigInt::from(a);
        if ab.pow(5) >= *r {
            break;
        }
        if (r % &ab).is_zero() && is_prime(&(r / &ab)) {
            return true;
        }
        a += 1;
    }
    false
}

pub fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
