//! Alternating projections between the Fourier magnitude set and the time
//! domain set `{support ⊆ 0..N-1, z(0) = x0}`.

use num_complex::Complex64;

use super::{IterateTrace, Normalized, PRInstance, PhaseRetrievalSolver, SolverConfig, SolverError};
use crate::signal::ComplexSignal;

/// Error reduction (Gerchberg–Saxton). Both constraint sets are projected
/// onto exactly, so the amplitude loss never increases.
#[derive(Debug, Clone, Copy, Default)]
pub struct ErrorReduction;

impl PhaseRetrievalSolver for ErrorReduction {
    fn name(&self) -> &'static str {
        "er"
    }

    fn solve_from(
        &self,
        inst: &PRInstance,
        cfg: &SolverConfig,
        start: &ComplexSignal,
    ) -> Result<IterateTrace, SolverError> {
        cfg.validate()?;
        let w = Normalized::new(inst);
        let mut z = w.normalize_start(inst, start)?;
        let mut spectrum = w.forward(&z);
        let mut loss = w.amplitude_loss(&spectrum);

        let mut trace = Trace::new(&w, inst.anchor());
        trace.push(&z, loss);
        while loss > cfg.loss_tol && trace.iterations() < cfg.max_iters {
            let projected = w.fourier_projection(&spectrum);
            z = w.inverse(&projected, w.n);
            z[0] = w.anchor;
            spectrum = w.forward(&z);
            loss = w.amplitude_loss(&spectrum);
            trace.push(&z, loss);
        }
        Ok(trace.finish(loss <= cfg.loss_tol))
    }
}

/// Fienup's hybrid input-output: entries inside the support take the
/// Fourier-projected value, entries outside are pushed by `-β` times it.
/// The state lives on the full `M`-point grid; the reported iterate is its
/// restriction to the support with the anchor written.
#[derive(Debug, Clone, Copy, Default)]
pub struct HybridInputOutput;

impl PhaseRetrievalSolver for HybridInputOutput {
    fn name(&self) -> &'static str {
        "hio"
    }

    fn solve_from(
        &self,
        inst: &PRInstance,
        cfg: &SolverConfig,
        start: &ComplexSignal,
    ) -> Result<IterateTrace, SolverError> {
        cfg.validate()?;
        let w = Normalized::new(inst);
        let mut g = w.normalize_start(inst, start)?;
        g.resize(w.m, Complex64::new(0.0, 0.0));

        let mut loss = w.amplitude_loss(&w.forward(&g[..w.n]));
        let mut trace = Trace::new(&w, inst.anchor());
        trace.push(&g[..w.n], loss);
        while loss > cfg.loss_tol && trace.iterations() < cfg.max_iters {
            let projected = w.inverse(&w.fourier_projection(&w.forward(&g)), w.m);
            for (k, (gk, pk)) in g.iter_mut().zip(&projected).enumerate() {
                *gk = if k == 0 {
                    w.anchor
                } else if k < w.n {
                    *pk
                } else {
                    *gk - cfg.beta_hio * pk
                };
            }
            loss = w.amplitude_loss(&w.forward(&g[..w.n]));
            trace.push(&g[..w.n], loss);
        }
        Ok(trace.finish(loss <= cfg.loss_tol))
    }
}

/// Accumulates denormalized iterates.
pub(super) struct Trace<'a> {
    w: &'a Normalized,
    anchor: Complex64,
    iterates: Vec<ComplexSignal>,
    losses: Vec<f64>,
}

impl<'a> Trace<'a> {
    pub fn new(w: &'a Normalized, anchor: Complex64) -> Self {
        Self { w, anchor, iterates: Vec::new(), losses: Vec::new() }
    }

    pub fn push(&mut self, z: &[Complex64], normalized_loss: f64) {
        self.iterates.push(self.w.denormalize(z, self.anchor));
        self.losses.push(self.w.denormalize_loss(normalized_loss));
    }

    pub fn iterations(&self) -> usize {
        self.iterates.len().saturating_sub(1)
    }

    pub fn finish(self, converged: bool) -> IterateTrace {
        IterateTrace { iterates: self.iterates, losses: self.losses, converged }
    }
}
