//! Root discrimination near a hard instance's ground truth.
//!
//! Write `β_k` for the zero chosen by the witness and `x_m = x + δ`. While
//! `‖δ‖ ≤ u_max^{-2N}`, every index whose reciprocal `1/β_k` is not a zero
//! keeps `|X_m(1/β_k)| ≥ |X_m(β_k)| + c₀` with `c₀ = 1 - 2u_max^{-N}`, and
//! every index where both are zeros keeps both magnitudes below `u_max^{-N}`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::construct::{ground_truth_signal, rational_to_f64};
use super::pp::{IndexSet, PPInstance};
use super::HardnessError;
use crate::signal::ComplexSignal;
use crate::ztransform::eval_ztransform;

/// Both candidate zeros count as present when both magnitudes are at most this.
pub const BOTH_ROOTS_THRESHOLD: f64 = 0.25;
/// `|X_m(-1/u)|` must exceed `|X_m(-u)|` by this much to select `-u`.
pub const SEPARATION_THRESHOLD: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `β = -u`; the index goes into `Γ`.
    SelectGamma,
    /// `β = -1/u`.
    SelectRecip,
    BothRoots,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscriminationResult {
    pub verdict: Verdict,
    /// `|X_m(-u)|`.
    pub at_gamma: f64,
    /// `|X_m(-1/u)|`.
    pub at_recip: f64,
}

/// Classifies the pair `(-u, -1/u)` from the z-transform of `xm`.
///
/// # Panics
/// If `uk` is zero.
pub fn discriminate(xm: &ComplexSignal, uk: u64) -> DiscriminationResult {
    assert!(uk > 0, "uk must be positive");
    let u = uk as f64;
    let a = eval_ztransform(xm, Complex64::new(-u, 0.0)).expect("nonzero argument").norm();
    let b = eval_ztransform(xm, Complex64::new(-1.0 / u, 0.0)).expect("nonzero argument").norm();
    let verdict = if a.max(b) <= BOTH_ROOTS_THRESHOLD {
        Verdict::BothRoots
    } else if b >= a + SEPARATION_THRESHOLD {
        Verdict::SelectGamma
    } else {
        Verdict::SelectRecip
    };
    DiscriminationResult { verdict, at_gamma: a, at_recip: b }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaClause {
    /// `|X_m(1/β)| ≥ |X_m(β)| + c₀`.
    Separation,
    /// `max(|X_m(β)|, |X_m(1/β)|) ≤ u_max^{-N}`.
    DoubleRootCap,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaCheck {
    /// 1-based index.
    pub k: usize,
    pub clause: LemmaClause,
    /// `|X_m(β_k)|`.
    pub at_beta: f64,
    /// `|X_m(1/β_k)|`.
    pub at_recip: f64,
    /// Slack in the clause; nonnegative when it holds.
    pub margin: f64,
}

impl LemmaCheck {
    pub fn holds(&self) -> bool {
        self.margin >= 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub c0: f64,
    pub cap: f64,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(LemmaCheck::holds)
    }

    /// Smallest margin over all indices.
    pub fn min_margin(&self) -> f64 {
        self.checks.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min)
    }
}

/// Checks both clauses at `x_m = x + perturbation`, where `x` is the exact
/// ground truth for `Γ`. `X(z)` is evaluated exactly and the perturbation's
/// contribution in floating point, so roundoff in the large ground-truth
/// entries does not mask the bounds.
pub fn check_lemma_bounds(
    pp: &PPInstance,
    gamma: &IndexSet,
    perturbation: &ComplexSignal,
) -> Result<LemmaReport, HardnessError> {
    let x = ground_truth_signal(pp, gamma)?;
    let n = pp.len();
    if perturbation.len() != n {
        return Err(HardnessError::PerturbationLength { got: perturbation.len(), expected: n });
    }
    let u_max = pp.u_max() as f64;
    let cap = u_max.powi(-(n as i32));
    let bound = u_max.powi(-2 * n as i32);
    let norm = perturbation.norm();
    if !(norm <= bound) {
        return Err(HardnessError::HypothesisViolated { norm, bound });
    }
    let c0 = 1.0 - 2.0 * cap;

    let head = pp.head();
    let in_gamma = |k: usize| gamma.contains(&k);
    let magnitude = |z: &BigRational| {
        let exact = rational_to_f64(&x.eval_ztransform(z));
        let delta = eval_ztransform(perturbation, Complex64::new(z.to_f64().expect("finite"), 0.0))
            .expect("nonzero argument");
        (delta + exact).norm()
    };

    let checks = (1..n)
        .map(|k| {
            let u = BigRational::from_integer(BigInt::from(head[k - 1]));
            let (beta, recip) = if in_gamma(k) { (-u.clone(), -u.recip()) } else { (-u.recip(), -u) };
            // 1/β_k is a zero iff an equal value sits on the other side.
            let double = (1..n).any(|l| l != k && head[l - 1] == head[k - 1] && in_gamma(l) != in_gamma(k));
            let at_beta = magnitude(&beta);
            let at_recip = magnitude(&recip);
            let (clause, margin) = if double {
                (LemmaClause::DoubleRootCap, cap - at_beta.max(at_recip))
            } else {
                (LemmaClause::Separation, at_recip - at_beta - c0)
            };
            LemmaCheck { k, clause, at_beta, at_recip, margin }
        })
        .collect();
    Ok(LemmaReport { c0, cap, checks })
}
