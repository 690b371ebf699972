//! Gradient descent on the intensity loss.

use num_complex::Complex64;

use super::projection::Trace;
use super::{check_grid, IterateTrace, Normalized, PRInstance, PhaseRetrievalSolver, SolverConfig, SolverError};
use crate::signal::{dtft, ComplexSignal, SpectrumSamples};

const DIVERGENCE_FACTOR: f64 = 1e12;

/// Gradient of `Σⱼ (|ẑ(ωⱼ)|² - Rⱼ)²` as `∂/∂Re z(k) + i ∂/∂Im z(k)`:
/// `4 Σⱼ (|ẑⱼ|² - Rⱼ) ẑⱼ e^{iωⱼk}`.
pub fn intensity_gradient(z: &ComplexSignal, s: &SpectrumSamples) -> Result<Vec<Complex64>, SolverError> {
    check_grid(s)?;
    let zh = dtft(z, &s.omegas);
    let weighted: Vec<Complex64> = zh.iter().zip(&s.values).map(|(v, &r)| v * (v.norm_sqr() - r)).collect();
    Ok((0..z.len())
        .map(|k| {
            let sum: Complex64 = weighted
                .iter()
                .zip(&s.omegas)
                .map(|(v, &w)| v * Complex64::from_polar(1.0, w * k as f64))
                .sum();
            4.0 * sum
        })
        .collect())
}

/// Wirtinger flow without spectral initialization: fixed step
/// `μ = step_size / (M·N)` on the normalized problem, anchor rewritten after
/// every step.
#[derive(Debug, Clone, Copy, Default)]
pub struct WirtingerFlow;

impl PhaseRetrievalSolver for WirtingerFlow {
    fn name(&self) -> &'static str {
        "wf"
    }

    fn solve_from(
        &self,
        inst: &PRInstance,
        cfg: &SolverConfig,
        start: &ComplexSignal,
    ) -> Result<IterateTrace, SolverError> {
        cfg.validate()?;
        let w = Normalized::new(inst);
        let mu = cfg.step_size / (w.m * w.n) as f64;
        let intensities: Vec<f64> = w.amplitudes.iter().map(|a| a * a).collect();
        let objective = |spectrum: &[Complex64]| -> f64 {
            spectrum.iter().zip(&intensities).map(|(v, r)| (v.norm_sqr() - r).powi(2)).sum()
        };

        let mut z = w.normalize_start(inst, start)?;
        let mut spectrum = w.forward(&z);
        let initial = objective(&spectrum).max(f64::MIN_POSITIVE);
        let mut loss = w.amplitude_loss(&spectrum);

        let mut trace = Trace::new(&w, inst.anchor());
        trace.push(&z, loss);
        while loss > cfg.loss_tol && trace.iterations() < cfg.max_iters {
            let weighted: Vec<Complex64> =
                spectrum.iter().zip(&intensities).map(|(v, r)| v * (v.norm_sqr() - r)).collect();
            // 4 Σⱼ wⱼ e^{iωⱼk} = 4M · inverse(w)
            let grad = w.inverse(&weighted, w.n);
            let factor = 4.0 * w.m as f64 * mu;
            for (zk, gk) in z.iter_mut().zip(&grad).skip(1) {
                *zk -= gk * factor;
            }
            z[0] = w.anchor;
            spectrum = w.forward(&z);
            let f = objective(&spectrum);
            if !(f <= DIVERGENCE_FACTOR * initial) {
                return Err(SolverError::StepDiverged { iteration: trace.iterations() + 1, loss: f });
            }
            loss = w.amplitude_loss(&spectrum);
            trace.push(&z, loss);
        }
        Ok(trace.finish(loss <= cfg.loss_tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{fourier_intensity, uniform_grid};
    use crate::solvers::{intensity_loss, DEFAULT_GRID_MULT};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Central differences on the real and imaginary parts of each entry.
    fn finite_difference_gradient(z: &ComplexSignal, s: &SpectrumSamples, h: f64) -> Vec<Complex64> {
        (0..z.len())
            .map(|k| {
                let partial = |dir: Complex64| {
                    let mut plus = z.clone();
                    let mut minus = z.clone();
                    plus.entries_mut()[k] += dir * h;
                    minus.entries_mut()[k] -= dir * h;
                    (intensity_loss(&plus, s).unwrap() - intensity_loss(&minus, s).unwrap()) / (2.0 * h)
                };
                Complex64::new(partial(Complex64::new(1.0, 0.0)), partial(Complex64::new(0.0, 1.0)))
            })
            .collect()
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = ComplexSignal::random_gaussian(&mut rng, 4).unwrap();
        let s = fourier_intensity(&x, &uniform_grid(16));
        let z = ComplexSignal::random_gaussian(&mut rng, 4).unwrap();
        let analytic = intensity_gradient(&z, &s).unwrap();
        let numeric = finite_difference_gradient(&z, &s, 1e-6);
        let err: f64 = analytic.iter().zip(&numeric).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        let norm: f64 = numeric.iter().map(|b| b.norm_sqr()).sum::<f64>().sqrt();
        assert!(err <= 1e-5 * norm, "relative error {}", err / norm);
    }

    #[test]
    fn ground_truth_is_stationary() {
        let x = ComplexSignal::from_real(&[1.0, -2.0, 0.5]).unwrap();
        let inst = PRInstance::from_signal(&x, DEFAULT_GRID_MULT).unwrap();
        let grad = intensity_gradient(&x, inst.grid()).unwrap();
        assert!(grad.iter().all(|g| g.norm() < 1e-9));
        let trace = WirtingerFlow.solve_from(&inst, &SolverConfig::default(), &x).unwrap();
        assert!(trace.converged);
        assert!(trace.final_loss().unwrap() < 1e-20);
    }

    #[test]
    fn small_step_descends() {
        let x = ComplexSignal::from_real(&[1.0, -2.0, 0.5, 0.3]).unwrap();
        let inst = PRInstance::from_signal(&x, DEFAULT_GRID_MULT).unwrap();
        let cfg = SolverConfig { step_size: 1e-3, max_iters: 1, seed: 5, ..Default::default() };
        let trace = WirtingerFlow.solve(&inst, &cfg).unwrap();
        let before = intensity_loss(&trace.iterates[0], inst.grid()).unwrap();
        let after = intensity_loss(&trace.iterates[1], inst.grid()).unwrap();
        assert!(after < before, "{after} >= {before}");
    }

    #[test]
    fn huge_step_reports_divergence() {
        let x = ComplexSignal::from_real(&[1.0, -2.0, 0.5, 0.3]).unwrap();
        let inst = PRInstance::from_signal(&x, DEFAULT_GRID_MULT).unwrap();
        let cfg = SolverConfig { step_size: 1e4, max_iters: 100, seed: 5, ..Default::default() };
        assert!(matches!(WirtingerFlow.solve(&inst, &cfg), Err(SolverError::StepDiverged { .. })));
    }
}
