use num_bigint::BigInt;
use num_rational::BigRational;

use super::construct::HardInstance;
use super::lemma::{discriminate, Verdict};
use super::pp::{IndexSet, PPAnswer, PPDecision, PPInstance};
use super::HardnessError;
use crate::solvers::{reduction_budget, PhaseRetrievalSolver, SolverConfig, SolverError, DEFAULT_GRID_MULT};

/// Iterations granted to the solver in each round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterationBudget {
    /// [`reduction_budget`] for the round's `N` and `u_max`.
    Reduction,
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecideConfig {
    /// `max_iters` is overridden by `budget`.
    pub solver: SolverConfig,
    pub grid_mult: usize,
    pub budget: IterationBudget,
}

impl Default for DecideConfig {
    fn default() -> Self {
        Self { solver: SolverConfig::default(), grid_mult: DEFAULT_GRID_MULT, budget: IterationBudget::Reduction }
    }
}

fn no_solution(removed_pairs: Vec<(usize, usize)>, quot: Option<BigRational>, rounds: usize) -> PPDecision {
    PPDecision { answer: PPAnswer::NoSolution, witness: None, removed_pairs, quot, rounds }
}

/// Decides Product Partition with a phase retrieval solver.
///
/// Each round builds the hard instance on the surviving indices, runs the
/// solver and classifies every zero pair of its final iterate. A pair with
/// both zeros present and an equal partner value removes both indices and
/// restarts; otherwise the `-u` selections form `Γ₁`, the rest `Γ₂`, and the
/// answer is whether `∏_{Γ₁} u / ∏_{Γ₂} u = u_N`. A solver that proves the
/// instance infeasible answers no.
pub fn decide_pp(
    pp: &PPInstance,
    solver: &dyn PhaseRetrievalSolver,
    cfg: &DecideConfig,
) -> Result<PPDecision, HardnessError> {
    let u_n = pp.last();
    let mut active: Vec<usize> = (1..pp.len()).collect();
    let mut removed_pairs = Vec::new();
    let mut rounds = 0;

    'rounds: loop {
        if active.is_empty() {
            return Ok(no_solution(removed_pairs, None, rounds));
        }
        let mut values: Vec<u64> = active.iter().map(|&k| pp.value(k)).collect();
        values.push(u_n);
        let reduced = PPInstance::with_values(values)?;
        let hard = HardInstance::with_float(&reduced, cfg.grid_mult)?;
        let inst = hard.pr().expect("float instance");

        let mut solver_cfg = cfg.solver.clone();
        solver_cfg.max_iters = match cfg.budget {
            IterationBudget::Reduction => reduction_budget(reduced.len(), reduced.u_max()),
            IterationBudget::Fixed(m) => m,
        };
        rounds += 1;
        let trace = match solver.solve(inst, &solver_cfg) {
            Ok(trace) => trace,
            Err(SolverError::NoFeasibleSolution) => return Ok(no_solution(removed_pairs, None, rounds)),
            Err(e) => return Err(e.into()),
        };
        let xm = trace.final_iterate().ok_or(HardnessError::SolverFailure)?;

        let mut gamma1 = IndexSet::new();
        let mut gamma2 = IndexSet::new();
        for &k in &active {
            let uk = pp.value(k);
            match discriminate(xm, uk).verdict {
                Verdict::BothRoots => {
                    let partner = active.iter().copied().filter(|&l| l != k && pp.value(l) == uk).min();
                    let Some(l) = partner else {
                        return Ok(PPDecision {
                            answer: PPAnswer::HasSolution,
                            witness: None,
                            removed_pairs,
                            quot: None,
                            rounds,
                        });
                    };
                    removed_pairs.push((k, l));
                    active.retain(|&i| i != k && i != l);
                    continue 'rounds;
                }
                Verdict::SelectGamma => {
                    gamma1.insert(k);
                }
                Verdict::SelectRecip => {
                    gamma2.insert(k);
                }
            }
        }

        let product = |set: &IndexSet| set.iter().map(|&k| BigInt::from(pp.value(k))).product::<BigInt>();
        let quot = BigRational::new(product(&gamma1), product(&gamma2));
        if quot != BigRational::from_integer(BigInt::from(u_n)) {
            return Ok(no_solution(removed_pairs, Some(quot), rounds));
        }
        // each removed pair contributes one equal factor to each side
        let mut witness = gamma1;
        witness.extend(removed_pairs.iter().map(|&(a, b)| a.min(b)));
        debug_assert!(pp.is_witness(&witness));
        return Ok(PPDecision { answer: PPAnswer::HasSolution, witness: Some(witness), removed_pairs, quot: Some(quot), rounds });
    }
}
