//! Seeded solver experiments on random and hard instances.
//!
//! Trials run in parallel; rows are sorted by `(instance, solver)` before
//! they are returned, so output never depends on scheduling.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use fprlab_core::ambiguity::{root_separation, ANCHOR_TOL};
use fprlab_core::solvers::reduction_budget;
use fprlab_core::{
    canonicalize, construct_hard_instance, enumerate_solutions, filter_by_anchor, ground_truth_signal, ComplexSignal,
    IndexSet, PPInstance, PRInstance, PhaseRetrievalSolver, SolverConfig, SolverError, SolverKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Random draws whose roots come closer than this (relative) are redrawn.
pub const GENERIC_SEPARATION: f64 = 1e-3;
/// Relative tolerance for comparing canonical forms.
pub const RECOVERY_TOL: f64 = 1e-6;
/// Largest value used when planting Product Partition lists.
pub const HARD_MAX_VALUE: u64 = 6;
const PLANT_ATTEMPTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Random,
    Hard,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Random => "random",
            Suite::Hard => "hard",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(Suite::Random),
            "hard" => Ok(Suite::Hard),
            other => Err(format!("unknown suite {other:?} (expected random or hard)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub suite: Suite,
    /// Signal length.
    pub n: usize,
    pub trials: usize,
    pub solvers: Vec<SolverKind>,
    pub seed: u64,
    /// Per-trial budget; `None` picks `100·N²` (random) or the reduction budget (hard).
    pub iters: Option<usize>,
    pub grid_mult: usize,
    pub timing: bool,
}

impl BenchConfig {
    pub fn new(suite: Suite, n: usize, trials: usize, solvers: Vec<SolverKind>) -> Self {
        Self { suite, n, trials, solvers, seed: 0, iters: None, grid_mult: 4, timing: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub instance: usize,
    pub solver: String,
    pub iterations: usize,
    pub final_loss: f64,
    /// Canonical form of the final iterate matches the reference.
    pub recovered: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

/// One trial's instance and the signal a solver should find.
#[derive(Debug, Clone)]
pub struct BenchInstance {
    pub id: usize,
    pub inst: PRInstance,
    pub reference: ComplexSignal,
    pub budget: usize,
    pub pp: Option<PPInstance>,
}

/// Gaussian signal with well separated roots, anchored at its first entry.
pub fn random_instance(id: usize, n: usize, seed: u64, grid_mult: usize) -> Result<BenchInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = loop {
        let x = ComplexSignal::random_gaussian(&mut rng, n)?;
        if root_separation(&x)? >= GENERIC_SEPARATION {
            break x;
        }
    };
    let inst = PRInstance::from_signal(&x, grid_mult)?;
    Ok(BenchInstance { id, inst, reference: x, budget: 100 * n * n, pp: None })
}

/// Solvable Product Partition list of length `n` with a planted witness and a
/// single anchor-consistent signal.
pub fn plant_pp(n: usize, seed: u64) -> Result<(PPInstance, IndexSet)> {
    if n < 2 {
        bail!("hard instances need n >= 2");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PLANT_ATTEMPTS {
        let head: Vec<u64> = (1..n).map(|_| rng.random_range(2..=HARD_MAX_VALUE)).collect();
        let gamma: IndexSet = (1..n).filter(|_| rng.random_bool(0.5)).collect();
        let inside: u64 = gamma.iter().map(|&k| head[k - 1]).product();
        let outside: u64 = (1..n).filter(|k| !gamma.contains(k)).map(|k| head[k - 1]).product();
        if !inside.is_multiple_of(outside) || inside / outside < 2 {
            continue;
        }
        let mut u = head;
        u.push(inside / outside);
        let Ok(pp) = PPInstance::new(u) else { continue };
        let hard = construct_hard_instance(&pp)?;
        let inst = hard.pr().expect("float instance");
        let set = enumerate_solutions(inst.pairing(), 0.0)?;
        let survivors = filter_by_anchor(&set, inst.anchor(), ANCHOR_TOL)?;
        if survivors.distinct_canonical(RECOVERY_TOL)?.len() == 1 {
            return Ok((pp, gamma));
        }
    }
    bail!("no uniquely solvable list of length {n} found in {PLANT_ATTEMPTS} draws")
}

pub fn hard_instance(id: usize, n: usize, seed: u64, grid_mult: usize) -> Result<BenchInstance> {
    let (pp, gamma) = plant_pp(n, seed)?;
    let hard = fprlab_core::HardInstance::with_float(&pp, grid_mult)?;
    let reference = ground_truth_signal(&pp, &gamma)?.to_complex();
    let inst = hard.pr().expect("float instance").clone();
    Ok(BenchInstance { id, inst, reference, budget: reduction_budget(n, pp.u_max()), pp: Some(pp) })
}

/// Canonical forms agree within [`RECOVERY_TOL`] of the larger entry.
pub fn recovered(got: &ComplexSignal, reference: &ComplexSignal) -> bool {
    let (Ok(a), Ok(b)) = (canonicalize(got), canonicalize(reference)) else { return false };
    if a.len() != b.len() {
        return false;
    }
    let scale = a.max_abs().max(b.max_abs());
    a.entries().iter().zip(b.entries()).all(|(x, y)| (x - y).norm() <= RECOVERY_TOL * scale)
}

fn instance_seed(base: u64, id: usize) -> u64 {
    base.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(id as u64)
}

pub fn build_instances(cfg: &BenchConfig) -> Result<Vec<BenchInstance>> {
    (0..cfg.trials)
        .into_par_iter()
        .map(|id| {
            let seed = instance_seed(cfg.seed, id);
            match cfg.suite {
                Suite::Random => random_instance(id, cfg.n, seed, cfg.grid_mult),
                Suite::Hard => hard_instance(id, cfg.n, seed, cfg.grid_mult),
            }
            .with_context(|| format!("building {} instance {id}", cfg.suite))
        })
        .collect()
}

pub fn run_trial(b: &BenchInstance, kind: SolverKind, cfg: &BenchConfig) -> ResultRow {
    let solver_cfg =
        SolverConfig { max_iters: cfg.iters.unwrap_or(b.budget), seed: instance_seed(cfg.seed, b.id), ..Default::default() };
    let start = Instant::now();
    let outcome = kind.solve(&b.inst, &solver_cfg);
    let wall_ms = cfg.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let (iterations, final_loss, recovered) = match outcome {
        Ok(trace) => {
            let z = trace.final_iterate().expect("traces hold the start point");
            (trace.iterations(), trace.final_loss().unwrap_or(f64::INFINITY), recovered(z, &b.reference))
        }
        Err(SolverError::StepDiverged { iteration, .. }) => (iteration, f64::INFINITY, false),
        Err(_) => (0, f64::INFINITY, false),
    };
    ResultRow { instance: b.id, solver: kind.as_str().to_string(), iterations, final_loss, recovered, wall_ms }
}

pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<ResultRow>> {
    let instances = build_instances(cfg)?;
    let order = |kind: &str| cfg.solvers.iter().position(|s| s.as_str() == kind).unwrap_or(usize::MAX);
    let mut rows: Vec<ResultRow> = instances
        .par_iter()
        .flat_map_iter(|b| cfg.solvers.iter().map(move |&kind| run_trial(b, kind, cfg)))
        .collect();
    rows.sort_by_key(|r| (r.instance, order(&r.solver)));
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[ResultRow], timing: bool, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["instance", "solver", "iterations", "final_loss", "recovered"];
    if timing {
        header.push("wall_ms");
    }
    w.write_record(&header)?;
    for r in rows {
        let mut record = vec![
            r.instance.to_string(),
            r.solver.clone(),
            r.iterations.to_string(),
            format!("{:e}", r.final_loss),
            r.recovered.to_string(),
        ];
        if timing {
            record.push(format!("{:.3}", r.wall_ms.unwrap_or(f64::NAN)));
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub solver: String,
    pub trials: usize,
    pub recovered: usize,
    pub median_loss: f64,
}

impl SummaryRow {
    pub fn rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.recovered as f64 / self.trials as f64
        }
    }
}

pub fn summarize(rows: &[ResultRow], solvers: &[SolverKind]) -> Vec<SummaryRow> {
    solvers
        .iter()
        .map(|kind| {
            let mine: Vec<&ResultRow> = rows.iter().filter(|r| r.solver == kind.as_str()).collect();
            let mut losses: Vec<f64> = mine.iter().map(|r| r.final_loss).collect();
            losses.sort_by(f64::total_cmp);
            let median_loss = if losses.is_empty() { f64::NAN } else { losses[losses.len() / 2] };
            SummaryRow {
                solver: kind.as_str().to_string(),
                trials: mine.len(),
                recovered: mine.iter().filter(|r| r.recovered).count(),
                median_loss,
            }
        })
        .collect()
}

pub fn format_summary(suite: Suite, n: usize, summary: &[SummaryRow]) -> String {
    let mut out = format!("{:<8} {:>3} {:<8} {:>7} {:>10} {:>8} {:>12}\n", "suite", "N", "solver", "trials", "recovered", "rate", "median_loss");
    for s in summary {
        out.push_str(&format!(
            "{:<8} {:>3} {:<8} {:>7} {:>10} {:>8.3} {:>12.3e}\n",
            suite.to_string(),
            n,
            s.solver,
            s.trials,
            s.recovered,
            s.rate(),
            s.median_loss
        ));
    }
    out
}
