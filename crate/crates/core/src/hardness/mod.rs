//! Product Partition as phase retrieval.
//!
//! For integers `u₁..u_N ≥ 2` the reduction builds the phase retrieval
//! instance with anchor `x(0) = u_max^{N-1}`, zero pairs `(-u_k, -1/u_k)` for
//! `k < N` and `r(N-1) = |x(0)|² u_N`. A selection satisfies the anchor's
//! product constraint exactly when `∏_Γ u_k = u_N ∏_{Γᶜ} u_k`, so any solver
//! that reconstructs the signal accurately enough decides Product Partition.
//!
//! Index sets use the 1-based positions `1..N-1` of the input list.

mod construct;
mod decide;
mod lemma;
mod pp;

use thiserror::Error;

use crate::solvers::SolverError;
use crate::ztransform::ZError;

pub use construct::{construct_hard_instance, ground_truth_signal, ExactSignal, HardInstance};
pub use decide::{decide_pp, DecideConfig, IterationBudget};
pub use lemma::{
    check_lemma_bounds, discriminate, DiscriminationResult, LemmaCheck, LemmaClause, LemmaReport, Verdict,
    BOTH_ROOTS_THRESHOLD, SEPARATION_THRESHOLD,
};
pub use pp::{brute_force_pp, IndexSet, PPAnswer, PPDecision, PPInstance, MAX_BRUTE_FORCE_LEN};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HardnessError {
    #[error("Product Partition needs at least two integers, got {0}")]
    TooShort(usize),
    #[error("u_{index} = {value} is below 2")]
    ValueTooSmall { index: usize, value: u64 },
    #[error("max(u_1..u_{{N-1}}) = {u_max} is below 3; the reduction needs u_max >= 3 (when every u_k = 2 decide directly: solvable iff u_N = 2^d with d <= N-1 and d = N-1 mod 2)")]
    UMaxTooSmall { u_max: u64 },
    #[error("{len} integers exceed the brute-force budget of {max}")]
    BudgetExceeded { len: usize, max: usize },
    #[error("u_max^(2N) = {u_max}^{exponent} exceeds 2^52; floating-point instance would lose exactness")]
    OverflowBeyondPrecision { u_max: u64, exponent: usize },
    #[error("index set {0:?} is not a Product Partition witness")]
    InvalidWitness(IndexSet),
    #[error("perturbation norm {norm:e} exceeds u_max^(-2N) = {bound:e}")]
    HypothesisViolated { norm: f64, bound: f64 },
    #[error("perturbation has length {got}, expected {expected}")]
    PerturbationLength { got: usize, expected: usize },
    #[error("solver returned no iterate")]
    SolverFailure,
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Z(#[from] ZError),
}
