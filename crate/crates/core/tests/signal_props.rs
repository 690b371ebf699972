mod common;

use common::*;
use fprlab_core::{autocorr_from_spectrum, autocorrelation, fourier_intensity, spectrum_from_autocorr, uniform_grid};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn autocorrelation_matches_direct_sum(x in signal_strategy(1, 12)) {
        let r = autocorrelation(&x);
        prop_assert!(rel_err(r.lags(), &naive_autocorr(x.entries())) <= 1e-12);
    }

    #[test]
    fn spectrum_roundtrip(x in signal_strategy(1, 16)) {
        prop_assume!(x.norm() > 1e-6);
        let n = x.len();
        let s = fourier_intensity(&x, &uniform_grid(4 * n));
        for (w, v) in s.omegas.iter().zip(&s.values) {
            prop_assert!((v - naive_intensity(x.entries(), *w)).abs() <= 1e-12 * (1.0 + v));
        }
        let back = autocorr_from_spectrum(&s, n).unwrap();
        let direct = autocorrelation(&x);
        prop_assert!(rel_err(back.lags(), direct.lags()) <= 1e-10);
    }

    #[test]
    fn trivial_ambiguities_are_invisible(x in signal_strategy(1, 12), phi in 0.0f64..std::f64::consts::TAU) {
        let r = autocorrelation(&x);
        let scale = r.energy().max(1.0);
        for y in [x.rotated(phi), x.conj_reflect()] {
            let ry = autocorrelation(&y);
            let gap = ry.lags().iter().zip(r.lags()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            prop_assert!(gap <= 1e-12 * scale, "gap {gap}");
        }
    }

    #[test]
    fn spectrum_is_nonnegative(x in signal_strategy(1, 12)) {
        let s = spectrum_from_autocorr(&autocorrelation(&x), &uniform_grid(1024)).unwrap();
        prop_assert!(s.values.iter().all(|&v| v >= -1e-10));
    }

    #[test]
    fn autocorrelation_is_dominated_by_energy(x in signal_strategy(1, 12)) {
        let r = autocorrelation(&x);
        prop_assert!(r.lag(0).im == 0.0);
        for n in 1..x.len() as isize {
            prop_assert!(r.lag(n).norm() <= r.lag(0).re * (1.0 + 1e-12));
            prop_assert_eq!(r.lag(-n), r.lag(n).conj());
        }
    }
}
