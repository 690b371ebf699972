//! Signals, autocorrelations and sampled Fourier intensities.
//!
//! Conventions: `x̂(ω) = Σₙ x(n) e^{-iωn}`, `r(n) = Σₖ conj(x(k)) x(k+n)` and
//! `R(ω) = |x̂(ω)|² = Σₙ r(n) e^{-iωn}` with `r(-n) = conj(r(n))`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

/// Default absolute tolerance for residue checks.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SignalError {
    #[error("signal must have at least one entry")]
    Empty,
    #[error("entry {index} is not finite")]
    NonFinite { index: usize },
    #[error("spectrum has imaginary residue {residue:e} at omega = {omega} (tolerance {tol:e})")]
    ImaginaryResidueExceeded { residue: f64, omega: f64, tol: f64 },
    #[error("{got} spectrum samples cannot determine a length-{n} autocorrelation (need at least {needed})")]
    InsufficientSamples { got: usize, n: usize, needed: usize },
    #[error("sample angles do not form the uniform grid 2*pi*j/M (first offender at index {index})")]
    NonUniformGrid { index: usize },
    #[error("omegas and values differ in length ({omegas} vs {values})")]
    LengthMismatch { omegas: usize, values: usize },
}

/// A finite complex sequence `x(0..N-1)` with `N >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSignal(Vec<Complex64>);

impl ComplexSignal {
    pub fn new(entries: Vec<Complex64>) -> Result<Self, SignalError> {
        if entries.is_empty() {
            return Err(SignalError::Empty);
        }
        if let Some(index) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SignalError::NonFinite { index });
        }
        Ok(Self(entries))
    }

    pub fn from_real(values: &[f64]) -> Result<Self, SignalError> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// All-zero signal of length `n` (`n >= 1`).
    pub fn zeros(n: usize) -> Result<Self, SignalError> {
        Self::new(vec![Complex64::new(0.0, 0.0); n])
    }

    /// i.i.d. standard complex Gaussian entries (`E|x(k)|² = 1`).
    pub fn random_gaussian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<Self, SignalError> {
        let entries = (0..n)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
            })
            .collect();
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn entries_mut(&mut self) -> &mut [Complex64] {
        &mut self.0
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.0
    }

    pub fn first(&self) -> Complex64 {
        self.0[0]
    }

    pub fn last(&self) -> Complex64 {
        self.0[self.0.len() - 1]
    }

    /// `x(0) != 0` and `x(N-1) != 0`, both above `tol` in magnitude.
    pub fn is_full_support(&self, tol: f64) -> bool {
        self.first().norm() > tol && self.last().norm() > tol
    }

    /// `n ↦ conj(x(N-1-n))`.
    pub fn conj_reflect(&self) -> Self {
        Self(self.0.iter().rev().map(|z| z.conj()).collect())
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self(self.0.iter().map(|z| z * factor).collect())
    }

    /// Multiplies by the unimodular factor `e^{i phi}`.
    pub fn rotated(&self, phi: f64) -> Self {
        self.scaled(Complex64::from_polar(1.0, phi))
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Euclidean distance; signals of different lengths are zero-extended.
    pub fn distance(&self, other: &Self) -> f64 {
        let n = self.len().max(other.len());
        let zero = Complex64::new(0.0, 0.0);
        (0..n)
            .map(|k| {
                let a = self.0.get(k).copied().unwrap_or(zero);
                let b = other.0.get(k).copied().unwrap_or(zero);
                (a - b).norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }
}

impl fmt::Display for ComplexSignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, z) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            fmt_complex(f, *z)?;
        }
        write!(f, ")")
    }
}

pub(crate) fn fmt_complex(f: &mut fmt::Formatter<'_>, z: Complex64) -> fmt::Result {
    if z.im == 0.0 {
        write!(f, "{}", z.re)
    } else if z.im < 0.0 {
        write!(f, "{}-{}i", z.re, -z.im)
    } else {
        write!(f, "{}+{}i", z.re, z.im)
    }
}

/// Nonnegative lags `r(0..N-1)` of a conjugate-symmetric autocorrelation.
#[derive(Debug, Clone, PartialEq)]
pub struct Autocorrelation(Vec<Complex64>);

impl Autocorrelation {
    pub fn new(lags: Vec<Complex64>) -> Result<Self, SignalError> {
        if lags.is_empty() {
            return Err(SignalError::Empty);
        }
        if let Some(index) = lags.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SignalError::NonFinite { index });
        }
        Ok(Self(lags))
    }

    /// Signal length `N` this autocorrelation belongs to.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `r(n)` for any integer lag, using `r(-n) = conj(r(n))` and zero beyond `N-1`.
    pub fn lag(&self, n: isize) -> Complex64 {
        let k = n.unsigned_abs();
        match self.0.get(k) {
            Some(&v) if n >= 0 => v,
            Some(&v) => v.conj(),
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn lags(&self) -> &[Complex64] {
        &self.0
    }

    /// `r(N-1)`.
    pub fn leading(&self) -> Complex64 {
        self.0[self.0.len() - 1]
    }

    /// `r(0)` as a real number.
    pub fn energy(&self) -> f64 {
        self.0[0].re
    }

    /// Largest lag-wise difference relative to `max(r(0), other r(0))`.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let n = self.len().max(other.len()) as isize;
        let scale = self.energy().abs().max(other.energy().abs()).max(f64::MIN_POSITIVE);
        (0..n)
            .map(|k| (self.lag(k) - other.lag(k)).norm())
            .fold(0.0, f64::max)
            / scale
    }
}

/// Angles `ω_j` and nonnegative values `R(ω_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSamples {
    pub omegas: Vec<f64>,
    pub values: Vec<f64>,
}

impl SpectrumSamples {
    pub fn new(omegas: Vec<f64>, values: Vec<f64>) -> Result<Self, SignalError> {
        if omegas.len() != values.len() {
            return Err(SignalError::LengthMismatch { omegas: omegas.len(), values: values.len() });
        }
        Ok(Self { omegas, values })
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    /// True when `omegas[j] == 2πj/M` up to rounding.
    pub fn is_uniform(&self) -> bool {
        first_nonuniform(&self.omegas).is_none()
    }
}

/// The uniform grid `2πj/M`, `j = 0..M-1`.
pub fn uniform_grid(m: usize) -> Vec<f64> {
    (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect()
}

fn first_nonuniform(omegas: &[f64]) -> Option<usize> {
    let m = omegas.len() as f64;
    omegas
        .iter()
        .enumerate()
        .position(|(j, &w)| (w - 2.0 * PI * j as f64 / m).abs() > 1e-12 * (1.0 + w.abs()))
}

/// `x̂(ω) = Σₙ x(n) e^{-iωn}` at each angle.
pub fn dtft(x: &ComplexSignal, omegas: &[f64]) -> Vec<Complex64> {
    omegas
        .iter()
        .map(|&w| {
            x.entries()
                .iter()
                .enumerate()
                .map(|(n, &v)| v * Complex64::from_polar(1.0, -w * n as f64))
                .sum()
        })
        .collect()
}

pub fn autocorrelation(x: &ComplexSignal) -> Autocorrelation {
    let e = x.entries();
    let n = e.len();
    let lags = (0..n)
        .map(|lag| (0..n - lag).map(|k| e[k].conj() * e[k + lag]).sum())
        .collect();
    Autocorrelation(lags)
}

pub fn fourier_intensity(x: &ComplexSignal, omegas: &[f64]) -> SpectrumSamples {
    let values = dtft(x, omegas).into_iter().map(|v| v.norm_sqr()).collect();
    SpectrumSamples { omegas: omegas.to_vec(), values }
}

/// `R(ω) = Σ_{|n|<N} r(n) e^{-iωn}` with the default tolerance.
pub fn spectrum_from_autocorr(
    r: &Autocorrelation,
    omegas: &[f64],
) -> Result<SpectrumSamples, SignalError> {
    spectrum_from_autocorr_with_tol(r, omegas, DEFAULT_TOL)
}

/// The imaginary residue is compared against `tol * max(1, r(0))`.
pub fn spectrum_from_autocorr_with_tol(
    r: &Autocorrelation,
    omegas: &[f64],
    tol: f64,
) -> Result<SpectrumSamples, SignalError> {
    let n = r.len() as isize;
    let bound = tol * r.energy().abs().max(1.0);
    let mut values = Vec::with_capacity(omegas.len());
    for &w in omegas {
        let sum: Complex64 = (-(n - 1)..n)
            .map(|k| r.lag(k) * Complex64::from_polar(1.0, -w * k as f64))
            .sum();
        if sum.im.abs() > bound {
            return Err(SignalError::ImaginaryResidueExceeded { residue: sum.im.abs(), omega: w, tol: bound });
        }
        values.push(sum.re);
    }
    Ok(SpectrumSamples { omegas: omegas.to_vec(), values })
}

/// Inverts uniformly sampled intensities back to the `N` nonnegative lags.
///
/// Exact whenever `M >= 2N-1`, since the `2N-1` trigonometric moments then
/// do not alias.
pub fn autocorr_from_spectrum(s: &SpectrumSamples, n: usize) -> Result<Autocorrelation, SignalError> {
    if n == 0 {
        return Err(SignalError::Empty);
    }
    let m = s.len();
    let needed = 2 * n - 1;
    if m < needed {
        return Err(SignalError::InsufficientSamples { got: m, n, needed });
    }
    if let Some(index) = first_nonuniform(&s.omegas) {
        return Err(SignalError::NonUniformGrid { index });
    }
    let lags = (0..n)
        .map(|lag| {
            let sum: Complex64 = s
                .omegas
                .iter()
                .zip(&s.values)
                .map(|(&w, &v)| Complex64::from_polar(v, w * lag as f64))
                .sum();
            sum / m as f64
        })
        .collect();
    Autocorrelation::new(lags)
}
