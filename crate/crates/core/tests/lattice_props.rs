mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use trifactor::lattice::IntBasis;
use trifactor::smallroots::LatticeParams;

fn check(c: Check) -> Result<(), TestCaseError> {
    c.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn lll_postconditions_square(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.random_range(2..=6);
        let b = rand_basis(&mut r, d, d, 50);
        check(check_lll(&b))?;
    }

    #[test]
    fn lll_postconditions_wide(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.random_range(2..=5);
        let b = rand_basis(&mut r, d, d + 2, 1000);
        check(check_lll(&b))?;
    }

    #[test]
    fn two_dimensional_matches_gauss(a in -10_000i64..10_000, b in -10_000i64..10_000,
                                     c in -10_000i64..10_000, d in -10_000i64..10_000) {
        prop_assume!(a * d - b * c != 0);
        let basis = IntBasis::from_i64(&[&[a, b], &[c, d]]).unwrap();
        check(check_gauss_2d(&basis))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn howgrave_graham_vectors_vanish_at_planted_root(seed in any::<u64>(), tau in 0i64..=2) {
        let mut r = rng(seed);
        let (f, root, rb) = rand_planted(&mut r);
        let params = LatticeParams::new(1, rational(tau, 4), rational(1, 100)).unwrap();
        check_hg_planted(&f, &root, &rb, &params).map_err(TestCaseError::fail)?;
    }
}
