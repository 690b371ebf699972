//! Exact reference solver: enumerate all `2^{N-1}` selections and keep the
//! ones satisfying the anchor's product constraint. Exponential by nature.

use super::{amplitude_loss, IterateTrace, PRInstance, PhaseRetrievalSolver, SolverConfig, SolverError};
use crate::ambiguity::{enumerate_solutions, filter_by_anchor, ANCHOR_TOL};
use crate::signal::ComplexSignal;

#[derive(Debug, Clone, Copy, Default)]
pub struct EnumerationOracle;

impl EnumerationOracle {
    /// First anchor-consistent reconstruction in choice-vector order.
    pub fn reconstruct(&self, inst: &PRInstance) -> Result<ComplexSignal, SolverError> {
        let set = enumerate_solutions(inst.pairing(), 0.0)?;
        let survivors = filter_by_anchor(&set, inst.anchor(), ANCHOR_TOL)?;
        let mut signal = survivors.solutions.into_iter().next().expect("filter returns survivors").signal;
        signal.entries_mut()[0] = inst.anchor();
        Ok(signal)
    }
}

impl PhaseRetrievalSolver for EnumerationOracle {
    fn name(&self) -> &'static str {
        "oracle"
    }

    /// The start point is ignored.
    fn solve_from(
        &self,
        inst: &PRInstance,
        _cfg: &SolverConfig,
        _start: &ComplexSignal,
    ) -> Result<IterateTrace, SolverError> {
        let signal = self.reconstruct(inst)?;
        let loss = amplitude_loss(&signal, inst.grid())?;
        Ok(IterateTrace { iterates: vec![signal], losses: vec![loss], converged: true })
    }

    fn solve(&self, inst: &PRInstance, cfg: &SolverConfig) -> Result<IterateTrace, SolverError> {
        let start = inst.random_start(0);
        self.solve_from(inst, cfg, &start)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::DEFAULT_GRID_MULT;
    use crate::ztransform::ZeroPairing;
    use num_complex::Complex64;

    fn real(v: &[f64]) -> ComplexSignal {
        ComplexSignal::from_real(v).unwrap()
    }

    fn assert_close(a: &ComplexSignal, b: &[f64]) {
        for (x, y) in a.entries().iter().zip(b) {
            assert!((x - Complex64::new(*y, 0.0)).norm() < 1e-9 * y.abs().max(1.0), "{a} vs {b:?}");
        }
    }

    #[test]
    fn oracle_examples() {
        let cfg = SolverConfig::default();
        let inst = PRInstance::from_signal(&real(&[1.0, -2.0]), DEFAULT_GRID_MULT).unwrap();
        let trace = EnumerationOracle.solve(&inst, &cfg).unwrap();
        assert_eq!(trace.iterates.len(), 1);
        assert_close(&trace.iterates[0], &[1.0, -2.0]);
        assert!(trace.losses[0] < 1e-20);

        let inst = PRInstance::from_signal(&real(&[9.0, 45.0, 54.0]), DEFAULT_GRID_MULT).unwrap();
        let trace = EnumerationOracle.solve(&inst, &cfg).unwrap();
        assert_close(&trace.iterates[0], &[9.0, 45.0, 54.0]);
    }

    #[test]
    fn inconsistent_anchor_is_infeasible() {
        let pairing = ZeroPairing::from_signal(&real(&[9.0, 45.0, 54.0])).unwrap();
        let inst = PRInstance::new(pairing, Complex64::new(10.0, 0.0), DEFAULT_GRID_MULT).unwrap();
        assert_eq!(EnumerationOracle.solve(&inst, &SolverConfig::default()), Err(SolverError::NoFeasibleSolution));
    }
}
