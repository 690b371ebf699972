//! Fourier phase retrieval laboratory.
//!
//! A finite complex signal `x(0..N-1)` is determined by the magnitude of its
//! Fourier transform only up to a choice of one root from each of `N-1`
//! reciprocal zero pairs. This crate
//!
//! * relates signals, autocorrelations and sampled Fourier intensities ([`signal`]),
//! * factors the autocorrelation polynomial into zero pairs and expands root
//!   selections back into signals ([`ztransform`]),
//! * enumerates and disambiguates the resulting solution sets ([`ambiguity`]),
//! * implements iterative solvers and an exact enumeration oracle behind one
//!   trait ([`solvers`]),
//! * compiles Product Partition instances into adversarial phase retrieval
//!   instances and runs the decision loop built on top of any solver
//!   ([`hardness`]).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ambiguity;
pub mod hardness;
pub mod signal;
pub mod solvers;
pub mod ztransform;

pub use num_complex::Complex64;

pub use ambiguity::{
    canonicalize, enumerate_solutions, filter_by_anchor, product_constraint, AmbiguityError, Solution, SolutionSet,
};
pub use hardness::{
    brute_force_pp, check_lemma_bounds, construct_hard_instance, decide_pp, discriminate, ground_truth_signal,
    DecideConfig, DiscriminationResult, ExactSignal, HardInstance, HardnessError, IndexSet, IterationBudget,
    PPAnswer, PPDecision, PPInstance, Verdict,
};
pub use signal::{
    autocorr_from_spectrum, autocorrelation, fourier_intensity, spectrum_from_autocorr, uniform_grid, Autocorrelation,
    ComplexSignal, SignalError, SpectrumSamples,
};
pub use solvers::{
    amplitude_loss, intensity_loss, IterateTrace, PRInstance, PhaseRetrievalSolver, SolverConfig, SolverError,
    SolverKind,
};
pub use ztransform::{
    build_s_poly, eval_ztransform, find_roots, pair_roots, signal_from_selection, PolyCoeffs, RootPair,
    RootSelection, ZError, ZeroPairing,
};
