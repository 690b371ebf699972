//! Enumeration of every signal sharing a Fourier magnitude, trivial-ambiguity
//! canonicalization, and the anchor constraint `∏(-βⱼ) = r(N-1)/|x(0)|²`.

use std::cmp::Ordering;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::signal::{ComplexSignal, DEFAULT_TOL};
use crate::ztransform::{find_roots, signal_from_selection, PolyCoeffs, RootSelection, ZError, ZeroPairing};

/// Largest pair count enumerated exhaustively (`2^24` selections).
pub const MAX_ENUMERATION_PAIRS: usize = 24;
/// Default anchor filter tolerance, relative to `|r(N-1)|/|x0|²`.
pub const ANCHOR_TOL: f64 = 1e-6;
/// Grid used when rounding canonical representatives.
pub const CANONICAL_ROUNDING: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AmbiguityError {
    #[error("{pairs} zero pairs exceed the enumeration budget of {max}")]
    EnumerationBudgetExceeded { pairs: usize, max: usize },
    #[error("cannot canonicalize the zero signal")]
    ZeroSignal,
    #[error("anchor x0 must be nonzero")]
    ZeroAnchor,
    #[error("no root selection is consistent with the anchor")]
    NoFeasibleSolution,
    #[error(transparent)]
    Z(#[from] ZError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub choices: Vec<bool>,
    pub alpha: f64,
    pub signal: ComplexSignal,
}

impl Solution {
    pub fn selection<'a>(&self, pairing: &'a ZeroPairing) -> RootSelection<'a> {
        RootSelection { pairing, choices: self.choices.clone(), alpha: self.alpha }
    }
}

/// All reconstructions of one pairing, ordered by choice-vector encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    pub pairing: ZeroPairing,
    pub solutions: Vec<Solution>,
    /// Set once the member signals have been replaced by canonical representatives.
    pub canonical: bool,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    /// Replaces every member signal by its canonical representative.
    pub fn canonicalized(&self) -> Result<Self, AmbiguityError> {
        let solutions = self
            .solutions
            .iter()
            .map(|s| Ok(Solution { signal: canonicalize(&s.signal)?, ..s.clone() }))
            .collect::<Result<_, AmbiguityError>>()?;
        Ok(Self { pairing: self.pairing.clone(), solutions, canonical: true })
    }

    /// Canonical representatives with near-duplicates merged: two forms are
    /// the same when their largest entrywise gap is at most `rel_tol` times
    /// their largest entry.
    pub fn distinct_canonical(&self, rel_tol: f64) -> Result<Vec<ComplexSignal>, AmbiguityError> {
        let mut reps: Vec<ComplexSignal> = Vec::new();
        for s in &self.solutions {
            let c = canonicalize(&s.signal)?;
            if !reps.iter().any(|r| same_signal(r, &c, rel_tol)) {
                reps.push(c);
            }
        }
        Ok(reps)
    }
}

pub(crate) fn same_signal(a: &ComplexSignal, b: &ComplexSignal, rel_tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let scale = a.max_abs().max(b.max_abs()).max(f64::MIN_POSITIVE);
    a.entries().iter().zip(b.entries()).all(|(x, y)| (x - y).norm() <= rel_tol * scale)
}

/// One signal per choice vector, all with global phase `alpha`.
pub fn enumerate_solutions(pairing: &ZeroPairing, alpha: f64) -> Result<SolutionSet, AmbiguityError> {
    let pairs = pairing.pairs().len();
    if pairs > MAX_ENUMERATION_PAIRS {
        return Err(AmbiguityError::EnumerationBudgetExceeded { pairs, max: MAX_ENUMERATION_PAIRS });
    }
    let solutions = (0..1u64 << pairs)
        .into_par_iter()
        .map(|mask| {
            let sel = RootSelection::from_mask(pairing, mask, alpha);
            let signal = signal_from_selection(&sel)?;
            Ok(Solution { choices: sel.choices, alpha, signal })
        })
        .collect::<Result<Vec<_>, ZError>>()?;
    Ok(SolutionSet { pairing: pairing.clone(), solutions, canonical: false })
}

/// Representative of the orbit under shift, global phase and conjugate
/// reflection: zero padding stripped, first entry real positive, and the
/// lexicographically smaller of the signal and its reflection.
pub fn canonicalize(x: &ComplexSignal) -> Result<ComplexSignal, AmbiguityError> {
    let peak = x.max_abs();
    if peak == 0.0 {
        return Err(AmbiguityError::ZeroSignal);
    }
    let cutoff = DEFAULT_TOL * peak;
    let e = x.entries();
    let start = e.iter().position(|z| z.norm() > cutoff).expect("peak entry exceeds cutoff");
    let end = e.iter().rposition(|z| z.norm() > cutoff).expect("peak entry exceeds cutoff");
    let core = ComplexSignal::new(e[start..=end].to_vec()).expect("nonempty slice");

    let forward = phase_fixed_rounded(&core);
    let reflected = phase_fixed_rounded(&core.conj_reflect());
    Ok(match lex_signal_cmp(&forward, &reflected) {
        Ordering::Greater => reflected,
        _ => forward,
    })
}

fn phase_fixed_rounded(x: &ComplexSignal) -> ComplexSignal {
    let first = x.first();
    let rotation = first.conj() / first.norm();
    let entries = x
        .entries()
        .iter()
        .map(|&z| {
            let w = z * rotation;
            Complex64::new(round_to_grid(w.re), round_to_grid(w.im))
        })
        .collect();
    ComplexSignal::new(entries).expect("rotation of finite entries")
}

fn round_to_grid(v: f64) -> f64 {
    // + 0.0 folds -0.0 into 0.0
    (v / CANONICAL_ROUNDING).round() * CANONICAL_ROUNDING + 0.0
}

fn lex_signal_cmp(a: &ComplexSignal, b: &ComplexSignal) -> Ordering {
    for (x, y) in a.entries().iter().zip(b.entries()) {
        let ord = x.re.total_cmp(&y.re).then_with(|| x.im.total_cmp(&y.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    a.len().cmp(&b.len())
}

/// `|∏(-βⱼ) - r(N-1)/|x0|²|`.
pub fn product_constraint(sel: &RootSelection<'_>, x0: Complex64) -> Result<f64, AmbiguityError> {
    if x0.norm() == 0.0 {
        return Err(AmbiguityError::ZeroAnchor);
    }
    let product: Complex64 = sel.roots().iter().map(|b| -b).product();
    Ok((product - sel.pairing.scale() / x0.norm_sqr()).norm())
}

/// Keeps the selections whose product constraint holds for anchor `x0` and
/// re-expands them with `α = arg(x0)`, so each survivor has `x(0) ≈ x0`.
///
/// `rel_tol` is relative to `|r(N-1)|/|x0|²`. Non-generic inputs can leave
/// several survivors; all are returned in choice order.
pub fn filter_by_anchor(set: &SolutionSet, x0: Complex64, rel_tol: f64) -> Result<SolutionSet, AmbiguityError> {
    if x0.norm() == 0.0 {
        return Err(AmbiguityError::ZeroAnchor);
    }
    let pairing = &set.pairing;
    let threshold = rel_tol * pairing.scale().norm() / x0.norm_sqr();
    let alpha = x0.arg();
    let mut survivors = Vec::new();
    for s in &set.solutions {
        let sel = RootSelection { pairing, choices: s.choices.clone(), alpha };
        if product_constraint(&sel, x0)? <= threshold {
            let signal = signal_from_selection(&sel)?;
            survivors.push(Solution { choices: sel.choices, alpha, signal });
        }
    }
    if survivors.is_empty() {
        return Err(AmbiguityError::NoFeasibleSolution);
    }
    Ok(SolutionSet { pairing: pairing.clone(), solutions: survivors, canonical: false })
}

/// Smallest relative gap among the roots `βₙ` of `X(z)`: distance to the unit
/// circle, between two roots, and between a root and the reciprocal partner of
/// another. Small values flag inputs whose pairing is numerically ambiguous.
pub fn root_separation(x: &ComplexSignal) -> Result<f64, ZError> {
    if x.len() == 1 {
        return Ok(f64::INFINITY);
    }
    if x.first().norm() == 0.0 || x.last().norm() == 0.0 {
        return Ok(0.0);
    }
    let poly = PolyCoeffs::new(x.entries().iter().rev().copied().collect());
    let roots = find_roots(&poly)?;
    let mut sep = f64::INFINITY;
    for (i, &a) in roots.iter().enumerate() {
        let scale = a.norm().max(1.0);
        sep = sep.min((a.norm() - 1.0).abs() / scale);
        for (j, &b) in roots.iter().enumerate() {
            let s = scale.max(b.norm());
            if i != j {
                sep = sep.min((a - b).norm() / s);
            }
            let recip = b.conj().inv();
            if i != j {
                sep = sep.min((a - recip).norm() / s.max(recip.norm()));
            }
        }
    }
    Ok(sep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(v: &[f64]) -> ComplexSignal {
        ComplexSignal::from_real(v).unwrap()
    }

    fn pairing_12() -> ZeroPairing {
        ZeroPairing::from_pairs(c(-2.0, 0.0), &[(c(2.0, 0.0), c(0.5, 0.0))]).unwrap()
    }

    fn pairing_94554() -> ZeroPairing {
        ZeroPairing::from_pairs(
            c(486.0, 0.0),
            &[(c(-2.0, 0.0), c(-0.5, 0.0)), (c(-3.0, 0.0), c(-1.0 / 3.0, 0.0))],
        )
        .unwrap()
    }

    fn close(a: &ComplexSignal, b: &[f64]) -> bool {
        same_signal(a, &real(b), 1e-12)
    }

    #[test]
    fn enumerate_examples() {
        let set = enumerate_solutions(&pairing_12(), 0.0).unwrap();
        assert_eq!(set.len(), 2);
        assert!(close(&set.solutions[0].signal, &[2.0, -1.0]));
        assert!(close(&set.solutions[1].signal, &[1.0, -2.0]));

        let single = ZeroPairing::from_signal(&real(&[1.0])).unwrap();
        let set = enumerate_solutions(&single, 0.3).unwrap();
        assert_eq!(set.len(), 1);
        assert!((set.solutions[0].signal.first() - Complex64::from_polar(1.0, 0.3)).norm() < 1e-15);

        let set = enumerate_solutions(&pairing_94554(), 0.0).unwrap();
        assert_eq!(set.len(), 4);
        assert!(set.solutions.iter().any(|s| close(&s.signal, &[9.0, 45.0, 54.0])));
        assert!(set.solutions.iter().any(|s| close(&s.signal, &[54.0, 45.0, 9.0])));
    }

    #[test]
    fn enumeration_budget() {
        let pairs = vec![(c(2.0, 0.0), c(0.5, 0.0)); 25];
        let p = ZeroPairing::from_pairs(c(1.0, 0.0), &pairs).unwrap();
        assert_eq!(
            enumerate_solutions(&p, 0.0).unwrap_err(),
            AmbiguityError::EnumerationBudgetExceeded { pairs: 25, max: 24 }
        );
    }

    #[test]
    fn canonicalize_examples() {
        let x = ComplexSignal::new(vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 2.0)]).unwrap();
        assert_eq!(canonicalize(&x).unwrap(), real(&[1.0, 2.0]));
        assert_eq!(canonicalize(&real(&[1.0, 0.0, 0.0])).unwrap(), real(&[1.0]));
        assert_eq!(canonicalize(&real(&[0.0, 0.0])), Err(AmbiguityError::ZeroSignal));
    }

    #[test]
    fn canonicalize_matches_orbit_oracle() {
        // oracle: the orbit of (2,-1) under reflection is {(2,-1), (-1,2)};
        // phase-fixing gives {(2,-1), (1,-2)} and the lexicographic minimum is (1,-2)
        let candidates = [real(&[2.0, -1.0]), real(&[1.0, -2.0])];
        let expected = candidates
            .iter()
            .min_by(|a, b| lex_signal_cmp(a, b))
            .unwrap()
            .clone();
        assert_eq!(canonicalize(&real(&[2.0, -1.0])).unwrap(), expected);
        assert_eq!(canonicalize(&real(&[-1.0, 2.0])).unwrap(), expected);
    }

    #[test]
    fn product_constraint_examples() {
        let p = pairing_12();
        let take = RootSelection::new(&p, vec![true], 0.0).unwrap();
        assert!(product_constraint(&take, c(1.0, 0.0)).unwrap() < 1e-15);
        let recip = RootSelection::new(&p, vec![false], 0.0).unwrap();
        assert!((product_constraint(&recip, c(1.0, 0.0)).unwrap() - 1.5).abs() < 1e-15);
        assert_eq!(product_constraint(&take, c(0.0, 0.0)), Err(AmbiguityError::ZeroAnchor));

        let p = pairing_94554();
        let sel = RootSelection::new(&p, vec![true, true], 0.0).unwrap();
        assert!(product_constraint(&sel, c(9.0, 0.0)).unwrap() < 1e-13);
    }

    #[test]
    fn filter_examples() {
        let set = enumerate_solutions(&pairing_12(), 0.0).unwrap();
        let kept = filter_by_anchor(&set, c(1.0, 0.0), ANCHOR_TOL).unwrap();
        assert_eq!(kept.len(), 1);
        assert!(close(&kept.solutions[0].signal, &[1.0, -2.0]));
        let kept = filter_by_anchor(&set, c(2.0, 0.0), ANCHOR_TOL).unwrap();
        assert_eq!(kept.len(), 1);
        assert!(close(&kept.solutions[0].signal, &[2.0, -1.0]));
        assert_eq!(filter_by_anchor(&set, c(1.5, 0.0), ANCHOR_TOL), Err(AmbiguityError::NoFeasibleSolution));

        let set = enumerate_solutions(&pairing_94554(), 0.0).unwrap();
        let kept = filter_by_anchor(&set, c(9.0, 0.0), ANCHOR_TOL).unwrap();
        assert_eq!(kept.len(), 1);
        assert!(close(&kept.solutions[0].signal, &[9.0, 45.0, 54.0]));
    }

    #[test]
    fn filter_applies_anchor_phase() {
        let set = enumerate_solutions(&pairing_12(), 0.0).unwrap();
        let x0 = Complex64::from_polar(1.0, 1.1);
        let kept = filter_by_anchor(&set, x0, ANCHOR_TOL).unwrap();
        assert!((kept.solutions[0].signal.first() - x0).norm() < 1e-14);
        assert!((kept.solutions[0].alpha - 1.1).abs() < 1e-15);
    }

    #[test]
    fn separation_flags_unit_circle_roots() {
        assert!(root_separation(&real(&[1.0, -1.0])).unwrap() < 1e-12);
        assert!(root_separation(&real(&[1.0, -3.0])).unwrap() > 0.5);
    }
}
