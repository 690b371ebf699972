mod common;

use common::*;
use fprlab_core::ambiguity::ANCHOR_TOL;
use fprlab_core::{autocorrelation, canonicalize, enumerate_solutions, filter_by_anchor, ZeroPairing};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn cardinality_and_closure(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = generic_signal(&mut rng, n);
        let r = autocorrelation(&x);
        let pairing = ZeroPairing::from_autocorrelation(&r).unwrap();
        let set = enumerate_solutions(&pairing, 0.0).unwrap();
        prop_assert_eq!(set.len(), 1 << (n - 1));
        for s in &set.solutions {
            let ry = naive_autocorr(s.signal.entries());
            prop_assert!(rel_err(&ry, r.lags()) <= 1e-7);
        }
        let distinct = set.distinct_canonical(1e-6).unwrap();
        prop_assert_eq!(distinct.len(), (1usize << (n - 1)).div_ceil(2));
    }

    #[test]
    fn anchor_singles_out_the_ground_truth(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = generic_signal(&mut rng, n);
        let pairing = ZeroPairing::from_signal(&x).unwrap();
        let set = enumerate_solutions(&pairing, 0.0).unwrap();
        let survivors = filter_by_anchor(&set, x.first(), ANCHOR_TOL).unwrap();
        prop_assert_eq!(survivors.len(), 1);
        let y = &survivors.solutions[0].signal;
        prop_assert!(rel_err(y.entries(), x.entries()) <= 1e-7);
        let (got, want) = (canonicalize(y).unwrap(), canonicalize(&x).unwrap());
        prop_assert!(rel_err(got.entries(), want.entries()) <= 1e-7);
    }

    #[test]
    fn canonical_form_is_orbit_invariant(x in signal_strategy(1, 10), phi in 0.0f64..std::f64::consts::TAU) {
        prop_assume!(x.max_abs() > 1e-3);
        let base = canonicalize(&x).unwrap();
        prop_assert_eq!(&canonicalize(&x.rotated(phi)).unwrap(), &base);
        prop_assert_eq!(&canonicalize(&x.conj_reflect()).unwrap(), &base);
        prop_assert_eq!(&canonicalize(&base).unwrap(), &base);
    }
}
