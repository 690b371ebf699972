use std::fmt::Write as _;

use anyhow::{bail, Result};
use fprlab_core::ambiguity::ANCHOR_TOL;
use fprlab_core::signal::{spectrum_from_autocorr_with_tol, DEFAULT_TOL};
use fprlab_core::solvers::EnumerationOracle;
use fprlab_core::{
    autocorrelation, decide_pp, enumerate_solutions, product_constraint, uniform_grid, Complex64, ComplexSignal,
    DecideConfig, HardInstance, PPDecision, PRInstance, PhaseRetrievalSolver, SolverConfig, SolverKind, ZeroPairing,
};

use crate::bench::{recovered, ResultRow};
use crate::instance::Instance;

/// Shared numeric flags.
#[derive(Debug, Clone, Copy)]
pub struct Globals {
    /// Overrides the spectrum residue tolerance and the anchor tolerance.
    pub tol: Option<f64>,
    pub grid_mult: usize,
}

impl Default for Globals {
    fn default() -> Self {
        Self { tol: None, grid_mult: 4 }
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Autocorrelation lags followed by `omega,intensity` CSV on `points` grid angles.
pub fn cmd_autocorr(inst: &Instance, points: usize, g: &Globals) -> Result<(String, String)> {
    let Instance::Signal(x) = inst else { return Err(inst.mismatch("signal").into()) };
    let r = autocorrelation(x);
    let mut lags = String::new();
    for (n, v) in r.lags().iter().enumerate() {
        writeln!(lags, "r({n}) = {}", fmt_complex(*v))?;
    }
    let s = spectrum_from_autocorr_with_tol(&r, &uniform_grid(points), g.tol.unwrap_or(DEFAULT_TOL))?;
    let mut csv = String::from("omega,intensity\n");
    for (w, v) in s.omegas.iter().zip(&s.values) {
        writeln!(csv, "{w},{v}")?;
    }
    Ok((lags, csv))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationRow {
    /// Bit `i` is `1` when pair `i` contributes its outer root.
    pub choices: String,
    pub signal: ComplexSignal,
    /// `|∏(-β) - r(N-1)/|x0|²|`, when an anchor is known.
    pub residual: Option<f64>,
    pub feasible: bool,
}

/// Every root selection, marked against the anchor. Without `--anchor` the
/// signal's own `x(0)` or the file's anchor is used.
pub fn cmd_enumerate(inst: &Instance, anchor: Option<Complex64>, g: &Globals) -> Result<Vec<EnumerationRow>> {
    let (pairing, anchor) = match inst {
        Instance::Signal(x) => (ZeroPairing::from_signal(x)?, anchor.or(Some(x.first()))),
        Instance::Pairing { pairing, anchor: file_anchor } => (pairing.clone(), anchor.or(*file_anchor)),
        Instance::Pp(_) => return Err(inst.mismatch("signal or pairing").into()),
    };
    let alpha = anchor.map_or(0.0, |a| a.arg());
    let set = enumerate_solutions(&pairing, alpha)?;
    let tol = g.tol.unwrap_or(ANCHOR_TOL);
    set.solutions
        .iter()
        .map(|s| {
            let choices = s.choices.iter().map(|&c| if c { '1' } else { '0' }).collect();
            let residual = anchor.map(|a| product_constraint(&s.selection(&pairing), a)).transpose()?;
            let threshold = anchor.map_or(0.0, |a| tol * pairing.scale().norm() / a.norm_sqr());
            let feasible = residual.is_some_and(|r| r <= threshold);
            Ok(EnumerationRow { choices, signal: s.signal.clone(), residual, feasible })
        })
        .collect()
}

pub fn format_enumeration(rows: &[EnumerationRow]) -> String {
    let mut out = String::from("choices  feasible  residual      signal\n");
    for r in rows {
        let residual = r.residual.map_or("-".to_string(), |v| format!("{v:.3e}"));
        let _ = writeln!(out, "{:<8} {:<9} {:<13} {}", r.choices, if r.feasible { "yes" } else { "no" }, residual, r.signal);
    }
    out
}

/// Runs one solver. The reference for `recovered` is the signal itself for
/// signal files, and the oracle's reconstruction otherwise.
pub fn cmd_solve(inst: &Instance, solver: SolverKind, seed: u64, iters: Option<usize>, g: &Globals) -> Result<ResultRow> {
    let (pr, reference) = match inst {
        Instance::Signal(x) => (PRInstance::from_signal(x, g.grid_mult)?, Some(x.clone())),
        Instance::Pairing { pairing, anchor } => {
            let Some(anchor) = anchor else { bail!("solving needs an anchor") };
            let pr = PRInstance::new(pairing.clone(), *anchor, g.grid_mult)?;
            let reference = EnumerationOracle.reconstruct(&pr).ok();
            (pr, reference)
        }
        Instance::Pp(pp) => {
            let hard = HardInstance::with_float(pp, g.grid_mult)?;
            let pr = hard.pr().expect("float instance").clone();
            let reference = EnumerationOracle.reconstruct(&pr).ok();
            (pr, reference)
        }
    };
    let cfg = SolverConfig { max_iters: iters.unwrap_or(SolverConfig::default().max_iters), seed, ..Default::default() };
    let trace = solver.solve(&pr, &cfg)?;
    let z = trace.final_iterate().expect("traces hold the start point");
    Ok(ResultRow {
        instance: 0,
        solver: solver.as_str().to_string(),
        iterations: trace.iterations(),
        final_loss: trace.final_loss().unwrap_or(f64::INFINITY),
        recovered: reference.is_some_and(|r| recovered(z, &r)),
        wall_ms: None,
    })
}

pub fn cmd_decide(inst: &Instance, solver: SolverKind, seed: u64, iters: Option<usize>, g: &Globals) -> Result<PPDecision> {
    let Instance::Pp(pp) = inst else { return Err(inst.mismatch("pp").into()) };
    let mut cfg = DecideConfig { grid_mult: g.grid_mult, ..Default::default() };
    cfg.solver.seed = seed;
    if let Some(m) = iters {
        cfg.budget = fprlab_core::IterationBudget::Fixed(m);
    }
    Ok(decide_pp(pp, solver.solver(), &cfg)?)
}

pub fn format_decision(d: &PPDecision) -> String {
    let mut out = format!("{d}\n");
    if !d.removed_pairs.is_empty() {
        let pairs: Vec<String> = d.removed_pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        let _ = writeln!(out, "removed duplicate pairs: {}", pairs.join(" "));
    }
    if let Some(q) = &d.quot {
        let _ = writeln!(out, "quot = {q}");
    }
    let _ = writeln!(out, "solver rounds: {}", d.rounds);
    out
}
