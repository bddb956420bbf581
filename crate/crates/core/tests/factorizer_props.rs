mod common;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;
use trifactor::factorizer::{certify, construct_poly, recover_factors, solve_system};
use trifactor::MultiPoly;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn constructed_polynomial_properties(seed in any::<u64>()) {
        let mut r = rng(seed);
        let bits = r.random_range(16..=64);
        let (inst, p, q) = rand_construct_case(&mut r, bits);
        check_construct(&inst, &p, &q, &mut r).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// With the planted root known, pairing `f` with the line through it
    /// recovers exactly the planted factors.
    #[test]
    fn planted_root_recovers_factors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let bits = r.random_range(16..=40);
        let (inst, p, q) = rand_construct_case(&mut r, bits);
        let cp = construct_poly(&inst).unwrap();
        let root = inst.root_for(&p, &q).unwrap();
        let g = MultiPoly::from_terms(
            3,
            vec![(vec![1, 0, 0], BigInt::from(1)), (vec![0, 1, 0], BigInt::from(-1)), (vec![0, 0, 0], &root[1] - &root[0])],
        )
        .unwrap();
        let sols = solve_system(&cp.f, &g, &inst.z0).unwrap();
        prop_assert!(sols.contains(&(root[0].clone(), root[1].clone())));
        let found = recover_factors(&inst.n, &inst.m_mod, &inst.c_res, &inst.n_mod, &inst.d_res, &sols);
        let want = (p.clone().min(q.clone()), p.max(q));
        prop_assert_eq!(found, vec![want]);
    }

    #[test]
    fn certify_accepts_only_divisors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = rand_prime(&mut r, 20);
        let q = rand_prime(&mut r, 22);
        let n = &p * &q;
        prop_assert_eq!(certify(&n, &p), (p.clone().min(q.clone()), p.clone().max(q.clone())));
        let other = &p + BigInt::from(2);
        prop_assert!(std::panic::catch_unwind(|| certify(&n, &other)).is_err());
    }
}
