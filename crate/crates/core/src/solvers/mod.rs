//! Phase retrieval solvers behind one contract.
//!
//! Every solver receives a [`PRInstance`] (zero pairing, anchor `x0` and the
//! intensity sampled on a uniform grid) and produces an [`IterateTrace`]
//! whose iterates all satisfy `z(0) = x0`. Iterative solvers run on a copy
//! of the instance normalized to `r(0) = 1` and report iterates and losses in
//! the original units.

mod oracle;
mod projection;
mod wirtinger;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ambiguity::AmbiguityError;
use crate::signal::{
    dtft, spectrum_from_autocorr, uniform_grid, Autocorrelation, ComplexSignal, SignalError, SpectrumSamples,
};
use crate::ztransform::{ZError, ZeroPairing};

pub use oracle::EnumerationOracle;
pub use projection::{ErrorReduction, HybridInputOutput};
pub use wirtinger::{intensity_gradient, WirtingerFlow};

/// Default grid oversampling, `M = 4N`.
pub const DEFAULT_GRID_MULT: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("spectrum has {omegas} angles but {values} values")]
    GridMismatch { omegas: usize, values: usize },
    #[error("start has length {got}, instance needs {expected}")]
    StartLength { got: usize, expected: usize },
    #[error("gradient step diverged at iteration {iteration} (loss {loss:e})")]
    StepDiverged { iteration: usize, loss: f64 },
    #[error("no root selection is consistent with the anchor")]
    NoFeasibleSolution,
    #[error("unknown solver `{0}` (expected one of er, hio, wf, oracle)")]
    UnknownSolver(String),
    #[error(transparent)]
    Ambiguity(AmbiguityError),
    #[error(transparent)]
    Z(#[from] ZError),
    #[error(transparent)]
    Signal(#[from] SignalError),
}

impl From<AmbiguityError> for SolverError {
    fn from(e: AmbiguityError) -> Self {
        match e {
            AmbiguityError::NoFeasibleSolution => SolverError::NoFeasibleSolution,
            AmbiguityError::Z(z) => SolverError::Z(z),
            other => SolverError::Ambiguity(other),
        }
    }
}

/// A solver input: the factored measurement plus the anchor `x(0) = x0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PRInstance {
    pairing: ZeroPairing,
    anchor: Complex64,
    autocorr: Autocorrelation,
    grid: SpectrumSamples,
    normalization: f64,
}

impl PRInstance {
    /// Samples the intensity of `pairing` on the uniform grid `M = grid_mult · N`.
    pub fn new(pairing: ZeroPairing, anchor: Complex64, grid_mult: usize) -> Result<Self, SolverError> {
        if anchor.norm() == 0.0 || !anchor.re.is_finite() || !anchor.im.is_finite() {
            return Err(SolverError::InvalidInstance("anchor x0 must be finite and nonzero".into()));
        }
        if grid_mult < 2 {
            return Err(SolverError::InvalidInstance(format!(
                "grid multiplier {grid_mult} is below 2; the grid would not determine the autocorrelation"
            )));
        }
        let autocorr = pairing.autocorrelation();
        let n = pairing.signal_len();
        let grid = spectrum_from_autocorr(&autocorr, &uniform_grid(grid_mult * n))?;
        let normalization = 1.0 / autocorr.energy().sqrt();
        if !normalization.is_finite() {
            return Err(SolverError::InvalidInstance("autocorrelation has no energy".into()));
        }
        Ok(Self { pairing, anchor, autocorr, grid, normalization })
    }

    /// Instance whose ground truth is `x`, anchored at `x(0)`.
    pub fn from_signal(x: &ComplexSignal, grid_mult: usize) -> Result<Self, SolverError> {
        Self::new(ZeroPairing::from_signal(x)?, x.first(), grid_mult)
    }

    pub fn pairing(&self) -> &ZeroPairing {
        &self.pairing
    }

    pub fn anchor(&self) -> Complex64 {
        self.anchor
    }

    pub fn grid(&self) -> &SpectrumSamples {
        &self.grid
    }

    pub fn autocorrelation(&self) -> &Autocorrelation {
        &self.autocorr
    }

    /// `1/√r(0)`, the factor applied before iterating.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn signal_len(&self) -> usize {
        self.pairing.signal_len()
    }

    /// Complex Gaussian start with energy about `r(0)`, anchor overwritten.
    pub fn random_start(&self, seed: u64) -> ComplexSignal {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.signal_len();
        let mut z = ComplexSignal::random_gaussian(&mut rng, n)
            .expect("n >= 1")
            .scaled(Complex64::new((self.autocorr.energy() / n as f64).sqrt(), 0.0));
        z.entries_mut()[0] = self.anchor;
        z
    }
}

/// Knobs shared by all solvers; each solver reads the ones it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Convergence threshold on the amplitude loss of the normalized problem.
    pub loss_tol: f64,
    /// Wirtinger step, in units of `1/(M·N)` on the normalized problem.
    pub step_size: f64,
    pub beta_hio: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { max_iters: 1000, loss_tol: 1e-18, step_size: 0.1, beta_hio: 0.9, seed: 0 }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        if self.max_iters < 1 {
            return Err(SolverError::InvalidConfig("max_iters must be at least 1".into()));
        }
        if !(self.beta_hio > 0.0 && self.beta_hio < 1.0) {
            return Err(SolverError::InvalidConfig(format!("beta_hio = {} is outside (0, 1)", self.beta_hio)));
        }
        if !(self.step_size > 0.0) {
            return Err(SolverError::InvalidConfig(format!("step_size = {} must be positive", self.step_size)));
        }
        if !(self.loss_tol >= 0.0) {
            return Err(SolverError::InvalidConfig("loss_tol must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Iteration budget `100 · N² · ⌈log₂(u_max + 2)⌉` used by the reduction loop.
pub fn reduction_budget(n: usize, u_max: u64) -> usize {
    let log = ((u_max + 2) as f64).log2().ceil() as usize;
    100 * n * n * log.max(1)
}

/// Iterates `x₀, x₁, …` with their amplitude losses (original units).
#[derive(Debug, Clone, PartialEq)]
pub struct IterateTrace {
    pub iterates: Vec<ComplexSignal>,
    pub losses: Vec<f64>,
    pub converged: bool,
}

impl IterateTrace {
    /// Updates performed after the starting point.
    pub fn iterations(&self) -> usize {
        self.iterates.len().saturating_sub(1)
    }

    pub fn final_iterate(&self) -> Option<&ComplexSignal> {
        self.iterates.last()
    }

    pub fn final_loss(&self) -> Option<f64> {
        self.losses.last().copied()
    }
}

/// The pluggable reconstruction algorithm.
pub trait PhaseRetrievalSolver: Sync {
    fn name(&self) -> &'static str;

    fn solve_from(
        &self,
        inst: &PRInstance,
        cfg: &SolverConfig,
        start: &ComplexSignal,
    ) -> Result<IterateTrace, SolverError>;

    /// Runs from [`PRInstance::random_start`] seeded with `cfg.seed`.
    fn solve(&self, inst: &PRInstance, cfg: &SolverConfig) -> Result<IterateTrace, SolverError> {
        self.solve_from(inst, cfg, &inst.random_start(cfg.seed))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolverKind {
    ErrorReduction,
    HybridInputOutput,
    WirtingerFlow,
    Oracle,
}

impl SolverKind {
    pub const ALL: [SolverKind; 4] =
        [SolverKind::ErrorReduction, SolverKind::HybridInputOutput, SolverKind::WirtingerFlow, SolverKind::Oracle];

    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::ErrorReduction => "er",
            SolverKind::HybridInputOutput => "hio",
            SolverKind::WirtingerFlow => "wf",
            SolverKind::Oracle => "oracle",
        }
    }

    pub fn solver(self) -> &'static dyn PhaseRetrievalSolver {
        match self {
            SolverKind::ErrorReduction => &ErrorReduction,
            SolverKind::HybridInputOutput => &HybridInputOutput,
            SolverKind::WirtingerFlow => &WirtingerFlow,
            SolverKind::Oracle => &EnumerationOracle,
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverKind {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "er" | "error-reduction" | "gs" => Ok(SolverKind::ErrorReduction),
            "hio" => Ok(SolverKind::HybridInputOutput),
            "wf" | "wirtinger" => Ok(SolverKind::WirtingerFlow),
            "oracle" => Ok(SolverKind::Oracle),
            other => Err(SolverError::UnknownSolver(other.to_string())),
        }
    }
}

impl PhaseRetrievalSolver for SolverKind {
    fn name(&self) -> &'static str {
        self.as_str()
    }

    fn solve_from(
        &self,
        inst: &PRInstance,
        cfg: &SolverConfig,
        start: &ComplexSignal,
    ) -> Result<IterateTrace, SolverError> {
        self.solver().solve_from(inst, cfg, start)
    }
}

fn check_grid(s: &SpectrumSamples) -> Result<(), SolverError> {
    if s.omegas.len() != s.values.len() {
        return Err(SolverError::GridMismatch { omegas: s.omegas.len(), values: s.values.len() });
    }
    Ok(())
}

/// `Σⱼ (|ẑ(ωⱼ)| - √R(ωⱼ))²`.
pub fn amplitude_loss(z: &ComplexSignal, s: &SpectrumSamples) -> Result<f64, SolverError> {
    check_grid(s)?;
    Ok(dtft(z, &s.omegas)
        .iter()
        .zip(&s.values)
        .map(|(zh, &r)| (zh.norm() - r.max(0.0).sqrt()).powi(2))
        .sum())
}

/// `Σⱼ (|ẑ(ωⱼ)|² - R(ωⱼ))²`.
pub fn intensity_loss(z: &ComplexSignal, s: &SpectrumSamples) -> Result<f64, SolverError> {
    check_grid(s)?;
    Ok(dtft(z, &s.omegas)
        .iter()
        .zip(&s.values)
        .map(|(zh, &r)| (zh.norm_sqr() - r).powi(2))
        .sum())
}

/// The instance rescaled to `r(0) = 1` on its uniform grid, with a cached
/// table of `e^{-2πi·t/M}`.
pub(crate) struct Normalized {
    pub n: usize,
    pub m: usize,
    pub anchor: Complex64,
    /// `√R(ωⱼ)` after normalization.
    pub amplitudes: Vec<f64>,
    twiddle: Vec<Complex64>,
    scale: f64,
}

impl Normalized {
    pub fn new(inst: &PRInstance) -> Self {
        let s = inst.normalization;
        let m = inst.grid.len();
        let amplitudes = inst.grid.values.iter().map(|&r| r.max(0.0).sqrt() * s).collect();
        let twiddle = (0..m)
            .map(|t| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * t as f64 / m as f64))
            .collect();
        Self { n: inst.signal_len(), m, anchor: inst.anchor * s, amplitudes, twiddle, scale: s }
    }

    /// `Σ_{k<len} g(k) e^{-2πi jk/M}` for every `j`.
    pub fn forward(&self, g: &[Complex64]) -> Vec<Complex64> {
        (0..self.m)
            .map(|j| g.iter().enumerate().map(|(k, &v)| v * self.twiddle[(j * k) % self.m]).sum())
            .collect()
    }

    /// `(1/M) Σⱼ G(j) e^{2πi jk/M}` for `k < len`.
    pub fn inverse(&self, spectrum: &[Complex64], len: usize) -> Vec<Complex64> {
        (0..len)
            .map(|k| {
                let sum: Complex64 =
                    spectrum.iter().enumerate().map(|(j, &v)| v * self.twiddle[(j * k) % self.m].conj()).sum();
                sum / self.m as f64
            })
            .collect()
    }

    pub fn amplitude_loss(&self, spectrum: &[Complex64]) -> f64 {
        spectrum.iter().zip(&self.amplitudes).map(|(z, a)| (z.norm() - a).powi(2)).sum()
    }

    /// Replaces magnitudes by the measured amplitudes, keeping phases.
    pub fn fourier_projection(&self, spectrum: &[Complex64]) -> Vec<Complex64> {
        spectrum
            .iter()
            .zip(&self.amplitudes)
            .map(|(&z, &a)| {
                let r = z.norm();
                if r > 0.0 {
                    z * (a / r)
                } else {
                    Complex64::new(a, 0.0)
                }
            })
            .collect()
    }

    pub fn normalize_start(&self, inst: &PRInstance, start: &ComplexSignal) -> Result<Vec<Complex64>, SolverError> {
        if start.len() != self.n {
            return Err(SolverError::StartLength { got: start.len(), expected: self.n });
        }
        let mut z: Vec<Complex64> = start.entries().iter().map(|v| v * self.scale).collect();
        z[0] = self.anchor;
        debug_assert_eq!(inst.signal_len(), self.n);
        Ok(z)
    }

    /// Back to original units with the anchor written exactly.
    pub fn denormalize(&self, z: &[Complex64], anchor: Complex64) -> ComplexSignal {
        let mut entries: Vec<Complex64> = z.iter().map(|v| v / self.scale).collect();
        entries[0] = anchor;
        ComplexSignal::new(entries).expect("finite iterate")
    }

    /// Normalized amplitude loss to original units.
    pub fn denormalize_loss(&self, loss: f64) -> f64 {
        loss / (self.scale * self.scale)
    }
}
