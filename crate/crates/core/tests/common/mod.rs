#![allow(dead_code)]

use fprlab_core::ambiguity::root_separation;
use fprlab_core::{ComplexSignal, Complex64, ZeroPairing};
use proptest::prelude::*;
use rand::Rng;

/// Relative root gap below which a draw counts as a coincidence.
pub const GENERIC_SEPARATION: f64 = 1e-3;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn signal(entries: Vec<(f64, f64)>) -> ComplexSignal {
    ComplexSignal::new(entries.into_iter().map(|(re, im)| c(re, im)).collect()).unwrap()
}

/// Complex signals with entries in the unit square.
pub fn signal_strategy(min_len: usize, max_len: usize) -> impl Strategy<Value = ComplexSignal> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), min_len..=max_len).prop_map(signal)
}

pub fn is_generic(x: &ComplexSignal) -> bool {
    root_separation(x).map(|s| s >= GENERIC_SEPARATION).unwrap_or(false)
}

/// Gaussian draw retried until its roots are well separated.
pub fn generic_signal<R: Rng>(rng: &mut R, n: usize) -> ComplexSignal {
    loop {
        let x = ComplexSignal::random_gaussian(rng, n).unwrap();
        if is_generic(&x) {
            return x;
        }
    }
}

/// `Σₖ conj(x(k)) x(k+n)` by direct summation.
pub fn naive_autocorr(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let mut r = vec![c(0.0, 0.0); n];
    for (lag, slot) in r.iter_mut().enumerate() {
        for k in 0..n {
            if k + lag < n {
                *slot += x[k].conj() * x[k + lag];
            }
        }
    }
    r
}

/// `|Σ x(n) e^{-iωn}|²` by direct summation.
pub fn naive_intensity(x: &[Complex64], omega: f64) -> f64 {
    let mut acc = c(0.0, 0.0);
    for (n, v) in x.iter().enumerate() {
        let phase = -omega * n as f64;
        acc += v * c(phase.cos(), phase.sin());
    }
    acc.norm_sqr()
}

/// Largest entrywise gap relative to the largest entry of `b`.
pub fn rel_err(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let scale = b.iter().map(|v| v.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / scale
}

/// `min_φ ‖a - e^{iφ} b‖ / ‖b‖`.
pub fn phase_distance(a: &ComplexSignal, b: &ComplexSignal) -> f64 {
    let inner: Complex64 = a.entries().iter().zip(b.entries()).map(|(x, y)| x * y.conj()).sum();
    let rot = if inner.norm() > 0.0 { inner / inner.norm() } else { c(1.0, 0.0) };
    let diff: f64 = a.entries().iter().zip(b.entries()).map(|(x, y)| (x - rot * y).norm_sqr()).sum();
    diff.sqrt() / b.norm()
}

/// `|X(z)|` relative to `Σ |x(k)| |z|^{-k}`.
fn relative_residual(x: &ComplexSignal, z: Complex64) -> f64 {
    let w = z.inv();
    let mut value = c(0.0, 0.0);
    let mut size = 0.0;
    let mut power = c(1.0, 0.0);
    for v in x.entries() {
        value += v * power;
        size += v.norm() * power.norm();
        power *= w;
    }
    value.norm() / size
}

/// For each pair, whether `x` vanishes at the outer root rather than the inner.
pub fn truth_choices(x: &ComplexSignal, pairing: &ZeroPairing) -> Vec<bool> {
    pairing
        .pairs()
        .iter()
        .map(|p| relative_residual(x, p.gamma) <= relative_residual(x, p.gamma_recip))
        .collect()
}
