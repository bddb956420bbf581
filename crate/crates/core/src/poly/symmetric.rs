//! Power sums, elementary symmetric functions and monomial counts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::PolyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NewtonDirection {
    PowerToSymmetric,
    SymmetricToPower,
}

/// Converts between power sums `ρ_1..ρ_n` and elementary symmetric
/// functions `σ_1..σ_n` using `kσ_k = Σ_{i=1}^{k} (−1)^{i−1} σ_{k−i} ρ_i`.
pub fn newton_identities(
    dir: NewtonDirection,
    input: &[BigRational],
    n: usize,
) -> Result<Vec<BigRational>, PolyError> {
    if input.len() != n {
        return Err(PolyError::LengthMismatch {
            expected: n,
            found: input.len(),
        });
    }
    let alt = |i: usize| {
        if i % 2 == 1 {
            BigRational::one()
        } else {
            -BigRational::one()
        }
    };
    match dir {
        NewtonDirection::PowerToSymmetric => {
            let rho = input;
            let mut sigma = vec![BigRational::one()];
            for k in 1..=n {
                let mut acc = BigRational::zero();
                for i in 1..=k {
                    acc += alt(i) * &sigma[k - i] * &rho[i - 1];
                }
                sigma.push(acc / BigRational::from_integer(BigInt::from(k)));
            }
            Ok(sigma.split_off(1))
        }
        NewtonDirection::SymmetricToPower => {
            let mut sigma = vec![BigRational::one()];
            sigma.extend_from_slice(input);
            let mut rho: Vec<BigRational> = Vec::with_capacity(n);
            for k in 1..=n {
                let mut acc = BigRational::from_integer(BigInt::from(k)) * &sigma[k];
                for i in 1..k {
                    acc -= alt(i) * &sigma[k - i] * &rho[i - 1];
                }
                rho.push(alt(k) * acc);
            }
            Ok(rho)
        }
    }
}

/// Number of monomials of total degree at most `d` in `n` variables.
pub fn monomial_dim(n: u64, d: u64) -> BigInt {
    crate::arith::binomial(n + d, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn roots_one_two() {
        let s = newton_identities(NewtonDirection::PowerToSymmetric, &r(&[3, 5]), 2).unwrap();
        assert_eq!(s, r(&[3, 2]));
        let p = newton_identities(NewtonDirection::SymmetricToPower, &r(&[3, 2]), 2).unwrap();
        assert_eq!(p, r(&[3, 5]));
    }

    #[test]
    fn zero_and_singleton() {
        for dir in [NewtonDirection::PowerToSymmetric, NewtonDirection::SymmetricToPower] {
            assert_eq!(newton_identities(dir, &r(&[0, 0, 0]), 3).unwrap(), r(&[0, 0, 0]));
            assert_eq!(newton_identities(dir, &r(&[7]), 1).unwrap(), r(&[7]));
        }
        assert!(newton_identities(NewtonDirection::PowerToSymmetric, &r(&[1]), 2).is_err());
    }

    #[test]
    fn power_sums_of_known_roots() {
        // Roots 1, 2, 3, -4.
        let roots = [1i64, 2, 3, -4];
        let rho: Vec<i64> = (1..=4u32).map(|k| roots.iter().map(|x| x.pow(k)).sum()).collect();
        let sigma = newton_identities(NewtonDirection::PowerToSymmetric, &r(&rho), 4).unwrap();
        // e1 = 2, e2 = 1*2+1*3-4+2*3-8-12 = -13, e3 = 6-8-12-24 = -38, e4 = -24
        assert_eq!(sigma, r(&[2, -13, -38, -24]));
    }

    #[test]
    fn monomial_dims() {
        assert_eq!(monomial_dim(2, 2), BigInt::from(6));
        assert_eq!(monomial_dim(1, 9), BigInt::from(10));
        assert_eq!(monomial_dim(3, 1), BigInt::from(4));
    }

    proptest! {
        #[test]
        fn roundtrip(v in proptest::collection::vec((-50i64..50, 1i64..20), 1..=12)) {
            let n = v.len();
            let sigma: Vec<BigRational> = v
                .iter()
                .map(|&(a, b)| BigRational::new(a.into(), b.into()))
                .collect();
            let rho = newton_identities(NewtonDirection::SymmetricToPower, &sigma, n).unwrap();
            let back = newton_identities(NewtonDirection::PowerToSymmetric, &rho, n).unwrap();
            prop_assert_eq!(back, sigma);
        }
    }
}
