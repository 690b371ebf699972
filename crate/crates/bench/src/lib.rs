//! Fixtures shared by the criterion benchmarks.

use fprlab_core::ambiguity::root_separation;
use fprlab_core::ComplexSignal;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A seeded Gaussian signal whose spectral roots are well separated.
pub fn generic_signal(n: usize, seed: u64) -> ComplexSignal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let x = ComplexSignal::random_gaussian(&mut rng, n).expect("n > 0");
        if root_separation(&x).is_ok_and(|s| s >= 1e-3) {
            return x;
        }
    }
}
