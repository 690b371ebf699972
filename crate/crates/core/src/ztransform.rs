//! Z-transform factorization of an autocorrelation.
//!
//! `S(z) = z^{N-1} R(z)` is a degree `2N-2` polynomial whose roots come in
//! pairs `(γ, 1/conj(γ))`; roots on the unit circle have even multiplicity.
//! Every signal with the same Fourier magnitude picks one root per pair.

use std::cmp::Ordering;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use thiserror::Error;

use crate::signal::{autocorrelation, Autocorrelation, ComplexSignal};

/// Residual bound for accepted roots, relative to `‖p‖₁ · max(1,|ζ|)^D`.
pub const ROOT_TOL: f64 = 1e-9;
/// Base pairing tolerance; scaled by `max(1, |γ|²)`.
pub const PAIR_TOL: f64 = 1e-6;
const NEWTON_STEPS: usize = 5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZError {
    #[error("the Z-transform is singular at z = 0 for signals longer than one entry")]
    ZeroArgument,
    #[error("r(N-1) is zero; the pairing is undefined")]
    DegenerateLeadingLag,
    #[error("polynomial of degree {degree} has no roots to find")]
    DegreeTooLow { degree: usize },
    #[error("root finder did not converge for polynomial with coefficients {coeffs:?}")]
    NonConvergence { coeffs: Vec<Complex64> },
    #[error("expected an even number of roots, got {0}")]
    OddRootCount(usize),
    #[error("zero root encountered; pairs require nonzero roots")]
    ZeroRoot,
    #[error("root {root} has no reciprocal partner (best residual {residual:e}, tolerance {tol:e})")]
    UnpairableRoots { root: Complex64, residual: f64, tol: f64 },
    #[error("unit-circle root {root} has odd multiplicity")]
    OddUnitCircleMultiplicity { root: Complex64 },
    #[error("pairing scale r(N-1) must be nonzero")]
    ZeroScale,
    #[error("selection has {got} choices but the pairing has {expected} pairs")]
    ChoiceLengthMismatch { got: usize, expected: usize },
}

/// `Σₖ x(k) z^{-k}`.
pub fn eval_ztransform(x: &ComplexSignal, z: Complex64) -> Result<Complex64, ZError> {
    let e = x.entries();
    if e.len() == 1 {
        return Ok(e[0]);
    }
    if z == Complex64::new(0.0, 0.0) {
        return Err(ZError::ZeroArgument);
    }
    // Horner in w = 1/z keeps the intermediate magnitudes bounded for |z| > 1.
    let w = z.inv();
    Ok(e.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c))
}

/// Complex polynomial, ascending powers, leading coefficient nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs(Vec<Complex64>);

impl PolyCoeffs {
    /// Trims exact-zero leading coefficients. The zero polynomial becomes `[0]`.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self(coeffs)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        Self(expand_roots(roots))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `(p(z), p'(z))`.
    fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.0.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    fn l1_norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).sum()
    }
}

/// Ascending coefficients of `∏(z - βₙ)`.
pub(crate) fn expand_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &beta in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * beta;
        }
        coeffs = next;
    }
    coeffs
}

/// `S(z) = z^{N-1} R(z)`, so `c(k) = r(N-1-k)` for `k = 0..2N-2`.
pub fn build_s_poly(r: &Autocorrelation) -> Result<PolyCoeffs, ZError> {
    let n = r.len() as isize;
    if r.leading() == Complex64::new(0.0, 0.0) {
        return Err(ZError::DegenerateLeadingLag);
    }
    let coeffs = (0..2 * n - 1).map(|k| r.lag(n - 1 - k)).collect();
    Ok(PolyCoeffs(coeffs))
}

/// All roots with multiplicity: eigenvalues of the balanced companion matrix,
/// then at most five Newton steps each.
pub fn find_roots(p: &PolyCoeffs) -> Result<Vec<Complex64>, ZError> {
    let degree = p.degree();
    if degree == 0 {
        return Err(ZError::DegreeTooLow { degree });
    }
    let c = p.coeffs();
    let lead = c[degree];
    let mut companion = DMatrix::from_element(degree, degree, Complex64::new(0.0, 0.0));
    for i in 0..degree {
        companion[(i, degree - 1)] = -c[i] / lead;
        if i > 0 {
            companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
    }
    balance(&mut companion);

    let nonconvergence = || ZError::NonConvergence { coeffs: c.to_vec() };
    let eigenvalues = Schur::try_new(companion, f64::EPSILON, 10_000)
        .and_then(|s| s.eigenvalues())
        .ok_or_else(nonconvergence)?;

    let norm = p.l1_norm();
    let mut roots = Vec::with_capacity(degree);
    for mut z in eigenvalues.iter().copied() {
        let (mut value, _) = p.eval_with_derivative(z);
        for _ in 0..NEWTON_STEPS {
            let (_, dp) = p.eval_with_derivative(z);
            if dp.norm() == 0.0 || value.norm() == 0.0 {
                break;
            }
            let candidate = z - value / dp;
            let candidate_value = p.eval(candidate);
            if !(candidate_value.norm() < value.norm()) {
                break;
            }
            z = candidate;
            value = candidate_value;
        }
        let bound = ROOT_TOL * norm * z.norm().max(1.0).powi(degree as i32);
        if !(value.norm() <= bound) {
            return Err(nonconvergence());
        }
        roots.push(z);
    }
    Ok(roots)
}

/// Parlett–Reinsch balancing with power-of-two scalings.
fn balance(m: &mut DMatrix<Complex64>) {
    let n = m.nrows();
    let radix = 2.0_f64;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += m[(j, i)].l1_norm();
                    row += m[(i, j)].l1_norm();
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let total = col + row;
            let mut f = 1.0;
            let mut g = row / radix;
            while col < g {
                f *= radix;
                col *= radix * radix;
            }
            g = row * radix;
            while col > g {
                f /= radix;
                col /= radix * radix;
            }
            if (col + row) / f < 0.95 * total {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// One zero pair. `gamma` is the member with modulus at least one;
/// unit-circle pairs store the same root twice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    pub gamma: Complex64,
    pub gamma_recip: Complex64,
    pub on_unit_circle: bool,
}

impl RootPair {
    /// The pair `(γ, 1/conj(γ))`, oriented so the outer root comes first.
    pub fn from_root(root: Complex64) -> Self {
        let recip = root.conj().inv();
        if (root.norm() - 1.0).abs() <= pair_tol(root) {
            let unit = root / root.norm();
            return Self { gamma: unit, gamma_recip: unit, on_unit_circle: true };
        }
        if root.norm() >= 1.0 {
            Self { gamma: root, gamma_recip: recip, on_unit_circle: false }
        } else {
            Self { gamma: recip, gamma_recip: root, on_unit_circle: false }
        }
    }

    /// `|γ · conj(γ') - 1|`.
    pub fn residual(&self) -> f64 {
        pair_residual(self.gamma, self.gamma_recip)
    }

    pub fn select(&self, take_gamma: bool) -> Complex64 {
        if take_gamma {
            self.gamma
        } else {
            self.gamma_recip
        }
    }
}

fn pair_residual(a: Complex64, b: Complex64) -> f64 {
    (a * b.conj() - 1.0).norm()
}

fn pair_tol(root: Complex64) -> f64 {
    PAIR_TOL * root.norm_sqr().max(1.0)
}

/// `R(z) = z^{-N+1} · scale · ∏ (z - γₙ)(z - 1/conj(γₙ))` with `scale = r(N-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroPairing {
    scale: Complex64,
    pairs: Vec<RootPair>,
}

impl ZeroPairing {
    /// Validates every pair against the pairing tolerance.
    pub fn new(scale: Complex64, pairs: Vec<RootPair>) -> Result<Self, ZError> {
        if scale.norm() == 0.0 || !scale.re.is_finite() || !scale.im.is_finite() {
            return Err(ZError::ZeroScale);
        }
        for p in &pairs {
            if p.gamma.norm() == 0.0 || p.gamma_recip.norm() == 0.0 {
                return Err(ZError::ZeroRoot);
            }
            let tol = PAIR_TOL * p.gamma.norm_sqr().max(p.gamma_recip.norm_sqr()).max(1.0);
            let residual = p.residual();
            if !(residual <= tol) {
                return Err(ZError::UnpairableRoots { root: p.gamma, residual, tol });
            }
            if p.on_unit_circle && p.gamma != p.gamma_recip {
                return Err(ZError::UnpairableRoots { root: p.gamma, residual, tol });
            }
        }
        Ok(Self { scale, pairs })
    }

    /// Builds pairs `(γ, 1/conj(γ))` from raw roots; a pair whose members
    /// coincide on the unit circle is flagged as self-paired.
    pub fn from_pairs(scale: Complex64, pairs: &[(Complex64, Complex64)]) -> Result<Self, ZError> {
        let pairs = pairs
            .iter()
            .map(|&(a, b)| {
                let tol = PAIR_TOL * a.norm_sqr().max(b.norm_sqr()).max(1.0);
                let on_unit = (a.norm() - 1.0).abs() <= tol && (a - b).norm() <= tol;
                if on_unit {
                    let u = (a + b) / (a + b).norm();
                    RootPair { gamma: u, gamma_recip: u, on_unit_circle: true }
                } else if a.norm() >= b.norm() {
                    RootPair { gamma: a, gamma_recip: b, on_unit_circle: false }
                } else {
                    RootPair { gamma: b, gamma_recip: a, on_unit_circle: false }
                }
            })
            .collect();
        Self::new(scale, pairs)
    }

    /// Factors `S(z)` of the given autocorrelation.
    pub fn from_autocorrelation(r: &Autocorrelation) -> Result<Self, ZError> {
        let s = build_s_poly(r)?;
        if s.degree() == 0 {
            return Self::new(r.leading(), Vec::new());
        }
        let roots = find_roots(&s)?;
        pair_roots(&roots, r.leading())
    }

    pub fn from_signal(x: &ComplexSignal) -> Result<Self, ZError> {
        Self::from_autocorrelation(&autocorrelation(x))
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    pub fn pairs(&self) -> &[RootPair] {
        &self.pairs
    }

    /// Signal length `N = pairs + 1`.
    pub fn signal_len(&self) -> usize {
        self.pairs.len() + 1
    }

    /// Autocorrelation shared by every selection.
    pub fn autocorrelation(&self) -> Autocorrelation {
        let choices = vec![true; self.pairs.len()];
        let sel = RootSelection { pairing: self, choices, alpha: 0.0 };
        autocorrelation(&signal_from_selection(&sel).expect("choices sized to pairing"))
    }
}

/// Greedy reciprocal matching of the roots of `S(z)`.
///
/// Roots are visited in lexicographic `(re, im)` order; each unmatched root
/// takes the remaining root minimizing `|γ · conj(γ') - 1|`. Unit-circle roots
/// are matched only among themselves and become self-pairs.
pub fn pair_roots(roots: &[Complex64], scale: Complex64) -> Result<ZeroPairing, ZError> {
    if !roots.len().is_multiple_of(2) {
        return Err(ZError::OddRootCount(roots.len()));
    }
    if roots.iter().any(|z| z.norm() == 0.0) {
        return Err(ZError::ZeroRoot);
    }
    let mut sorted = roots.to_vec();
    sorted.sort_by(|a, b| lex_cmp(*a, *b));
    let is_unit: Vec<bool> = sorted.iter().map(|&z| (z.norm() - 1.0).abs() <= pair_tol(z)).collect();

    let mut used = vec![false; sorted.len()];
    let mut pairs = Vec::with_capacity(sorted.len() / 2);
    for i in 0..sorted.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let root = sorted[i];
        let best = (0..sorted.len())
            .filter(|&j| !used[j] && is_unit[j] == is_unit[i])
            .map(|j| (j, pair_residual(root, sorted[j])))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let Some((j, residual)) = best else {
            if is_unit[i] {
                return Err(ZError::OddUnitCircleMultiplicity { root });
            }
            return Err(ZError::UnpairableRoots { root, residual: f64::INFINITY, tol: pair_tol(root) });
        };
        let partner = sorted[j];
        let tol = PAIR_TOL * root.norm_sqr().max(partner.norm_sqr()).max(1.0);
        if residual > tol {
            return Err(ZError::UnpairableRoots { root, residual, tol });
        }
        used[j] = true;
        let pair = if is_unit[i] {
            let mean = (root + partner) / 2.0;
            let u = mean / mean.norm();
            RootPair { gamma: u, gamma_recip: u, on_unit_circle: true }
        } else if root.norm() >= partner.norm() {
            RootPair { gamma: root, gamma_recip: partner, on_unit_circle: false }
        } else {
            RootPair { gamma: partner, gamma_recip: root, on_unit_circle: false }
        };
        pairs.push(pair);
    }
    pairs.sort_by(|a, b| {
        a.gamma.norm().total_cmp(&b.gamma.norm()).then_with(|| lex_cmp(a.gamma, b.gamma))
    });
    ZeroPairing::new(scale, pairs)
}

pub(crate) fn lex_cmp(a: Complex64, b: Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im))
}

/// One root per pair (`true` takes `gamma`) plus a global phase.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSelection<'a> {
    pub pairing: &'a ZeroPairing,
    pub choices: Vec<bool>,
    pub alpha: f64,
}

impl<'a> RootSelection<'a> {
    pub fn new(pairing: &'a ZeroPairing, choices: Vec<bool>, alpha: f64) -> Result<Self, ZError> {
        if choices.len() != pairing.pairs.len() {
            return Err(ZError::ChoiceLengthMismatch { got: choices.len(), expected: pairing.pairs.len() });
        }
        Ok(Self { pairing, choices, alpha })
    }

    /// Choice vector from the low bits of `mask` (bit `i` set takes `gamma` of pair `i`).
    pub fn from_mask(pairing: &'a ZeroPairing, mask: u64, alpha: f64) -> Self {
        let choices = (0..pairing.pairs.len()).map(|i| (mask >> i) & 1 == 1).collect();
        Self { pairing, choices, alpha }
    }

    /// The selected roots `βₙ`.
    pub fn roots(&self) -> Vec<Complex64> {
        self.pairing.pairs.iter().zip(&self.choices).map(|(p, &c)| p.select(c)).collect()
    }

    /// `x(0) / e^{iα} = |r(N-1)|^{1/2} ∏ |βₙ|^{-1/2}`.
    pub fn leading_magnitude(&self) -> f64 {
        let prod: f64 = self.roots().iter().map(|b| b.norm()).product();
        (self.pairing.scale.norm() / prod).sqrt()
    }
}

/// Expands `e^{iα} c ∏(z - βₙ)` into the signal `x(0..N-1)`.
pub fn signal_from_selection(sel: &RootSelection<'_>) -> Result<ComplexSignal, ZError> {
    if sel.choices.len() != sel.pairing.pairs.len() {
        return Err(ZError::ChoiceLengthMismatch {
            got: sel.choices.len(),
            expected: sel.pairing.pairs.len(),
        });
    }
    let lead = Complex64::from_polar(sel.leading_magnitude(), sel.alpha);
    // x(k) is the coefficient of z^{N-1-k}
    let entries = expand_roots(&sel.roots()).into_iter().rev().map(|c| c * lead).collect();
    Ok(ComplexSignal::new(entries).expect("finite expansion of nonzero roots"))
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

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| lex_cmp(*a, *b));
        v
    }

    fn assert_close(a: &[Complex64], b: &[Complex64], tol: f64) {
        assert_eq!(a.len(), b.len(), "{a:?} vs {b:?}");
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).norm() <= tol * y.norm().max(1.0), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn ztransform_examples() {
        assert_eq!(eval_ztransform(&real(&[1.0, -2.0]), c(2.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(eval_ztransform(&real(&[1.0, -2.0]), c(-0.5, 0.0)).unwrap(), c(5.0, 0.0));
        let v = eval_ztransform(&real(&[9.0, 45.0, 54.0]), c(-2.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-12);
        assert_eq!(eval_ztransform(&real(&[3.0]), c(0.0, 0.0)).unwrap(), c(3.0, 0.0));
        assert_eq!(eval_ztransform(&real(&[1.0, 1.0]), c(0.0, 0.0)), Err(ZError::ZeroArgument));
    }

    #[test]
    fn s_poly_examples() {
        let r = autocorrelation(&real(&[1.0, -2.0]));
        assert_eq!(build_s_poly(&r).unwrap().coeffs(), &[c(-2.0, 0.0), c(5.0, 0.0), c(-2.0, 0.0)]);

        let r = Autocorrelation::new(vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(build_s_poly(&r).unwrap().coeffs(), &[c(1.0, 0.0)]);

        let r = autocorrelation(&real(&[9.0, 45.0, 54.0]));
        let s = build_s_poly(&r).unwrap();
        assert_eq!(s.degree(), 4);
        for root in [-2.0, -0.5, -3.0, -1.0 / 3.0] {
            assert!(s.eval(c(root, 0.0)).norm() < 1e-9, "{root}");
        }

        let r = Autocorrelation::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(build_s_poly(&r), Err(ZError::DegenerateLeadingLag));
    }

    #[test]
    fn s_poly_roots_include_signal_roots_for_complex_signal() {
        let x = ComplexSignal::new(vec![c(1.0, 2.0), c(0.5, -1.0), c(-2.0, 0.25)]).unwrap();
        let r = autocorrelation(&x);
        let s = build_s_poly(&r).unwrap();
        assert_eq!(s.coeffs()[0], r.leading());
        assert_eq!(s.coeffs()[4], r.leading().conj());
        let zx = PolyCoeffs::new(x.entries().iter().rev().copied().collect());
        for beta in find_roots(&zx).unwrap() {
            assert!(s.eval(beta).norm() < 1e-10);
            assert!(s.eval(beta.conj().inv()).norm() < 1e-10);
        }
    }

    #[test]
    fn find_roots_examples() {
        let p = PolyCoeffs::new(vec![c(-2.0, 0.0), c(5.0, 0.0), c(-2.0, 0.0)]);
        assert_close(&sorted(find_roots(&p).unwrap()), &[c(0.5, 0.0), c(2.0, 0.0)], 1e-12);

        let p = PolyCoeffs::new(vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_close(&sorted(find_roots(&p).unwrap()), &[c(-1.0, 0.0), c(1.0, 0.0)], 1e-12);

        let p = PolyCoeffs::new(vec![c(6.0, 0.0), c(5.0, 0.0), c(1.0, 0.0)]);
        assert_close(&sorted(find_roots(&p).unwrap()), &[c(-3.0, 0.0), c(-2.0, 0.0)], 1e-12);
    }

    #[test]
    fn find_roots_matches_quadratic_formula() {
        // oracle: z = (-b ± sqrt(b² - 4ac)) / 2a
        let (a, b, cc) = (c(1.5, -0.5), c(-2.0, 3.0), c(0.25, 4.0));
        let disc = (b * b - 4.0 * a * cc).sqrt();
        let expected = sorted(vec![(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)]);
        let got = sorted(find_roots(&PolyCoeffs::new(vec![cc, b, a])).unwrap());
        assert_close(&got, &expected, 1e-12);
    }

    #[test]
    fn find_roots_rejects_constants() {
        assert_eq!(find_roots(&PolyCoeffs::new(vec![c(2.0, 0.0)])), Err(ZError::DegreeTooLow { degree: 0 }));
    }

    #[test]
    fn pair_roots_examples() {
        let p = pair_roots(&[c(2.0, 0.0), c(0.5, 0.0)], c(-2.0, 0.0)).unwrap();
        assert_eq!(p.pairs().len(), 1);
        assert_eq!(p.pairs()[0].gamma, c(2.0, 0.0));
        assert_eq!(p.pairs()[0].gamma_recip, c(0.5, 0.0));

        let roots = [c(-2.0, 0.0), c(-0.5, 0.0), c(-3.0, 0.0), c(-1.0 / 3.0, 0.0)];
        let p = pair_roots(&roots, c(486.0, 0.0)).unwrap();
        let got: Vec<_> = p.pairs().iter().map(|q| (q.gamma, q.gamma_recip)).collect();
        assert_eq!(got, vec![(c(-2.0, 0.0), c(-0.5, 0.0)), (c(-3.0, 0.0), c(-1.0 / 3.0, 0.0))]);

        let p = pair_roots(&[c(0.0, 1.0), c(0.0, 1.0)], c(1.0, 0.0)).unwrap();
        assert_eq!(p.pairs().len(), 1);
        assert!(p.pairs()[0].on_unit_circle);
        assert_eq!(p.pairs()[0].gamma, p.pairs()[0].gamma_recip);
    }

    #[test]
    fn pair_roots_errors() {
        assert!(matches!(
            pair_roots(&[c(2.0, 0.0), c(0.4, 0.0)], c(1.0, 0.0)),
            Err(ZError::UnpairableRoots { .. })
        ));
        assert!(matches!(
            pair_roots(&[c(0.0, 1.0), c(2.0, 0.0)], c(1.0, 0.0)),
            Err(ZError::OddUnitCircleMultiplicity { .. })
        ));
        assert_eq!(pair_roots(&[c(2.0, 0.0)], c(1.0, 0.0)), Err(ZError::OddRootCount(1)));
        assert_eq!(pair_roots(&[c(0.0, 0.0), c(1.0, 0.0)], c(1.0, 0.0)), Err(ZError::ZeroRoot));
    }

    #[test]
    fn selection_examples() {
        let p = ZeroPairing::from_pairs(c(-2.0, 0.0), &[(c(2.0, 0.0), c(0.5, 0.0))]).unwrap();
        let x = signal_from_selection(&RootSelection::new(&p, vec![true], 0.0).unwrap()).unwrap();
        assert_close(x.entries(), &[c(1.0, 0.0), c(-2.0, 0.0)], 1e-14);
        let x = signal_from_selection(&RootSelection::new(&p, vec![false], 0.0).unwrap()).unwrap();
        assert_close(x.entries(), &[c(2.0, 0.0), c(-1.0, 0.0)], 1e-14);

        let p = ZeroPairing::from_pairs(
            c(486.0, 0.0),
            &[(c(-2.0, 0.0), c(-0.5, 0.0)), (c(-3.0, 0.0), c(-1.0 / 3.0, 0.0))],
        )
        .unwrap();
        let x = signal_from_selection(&RootSelection::new(&p, vec![true, true], 0.0).unwrap()).unwrap();
        assert_close(x.entries(), &[c(9.0, 0.0), c(45.0, 0.0), c(54.0, 0.0)], 1e-13);
    }

    #[test]
    fn pipeline_recovers_pairs_of_known_signal() {
        let p = ZeroPairing::from_signal(&real(&[9.0, 45.0, 54.0])).unwrap();
        assert_close(&[p.scale()], &[c(486.0, 0.0)], 1e-12);
        assert_close(&[p.pairs()[0].gamma, p.pairs()[0].gamma_recip], &[c(-2.0, 0.0), c(-0.5, 0.0)], 1e-9);
        assert_close(&[p.pairs()[1].gamma, p.pairs()[1].gamma_recip], &[c(-3.0, 0.0), c(-1.0 / 3.0, 0.0)], 1e-9);
    }

    #[test]
    fn length_one_signal_has_no_pairs() {
        let p = ZeroPairing::from_signal(&real(&[3.0])).unwrap();
        assert!(p.pairs().is_empty());
        let x = signal_from_selection(&RootSelection::new(&p, vec![], 0.5).unwrap()).unwrap();
        assert_close(x.entries(), &[Complex64::from_polar(3.0, 0.5)], 1e-14);
    }

    #[test]
    fn planted_unit_circle_root_self_pairs() {
        // (1 - e^{iθ} z^{-1}) planted into a random-ish signal
        let theta = 0.7;
        let u = Complex64::from_polar(1.0, theta);
        let base = [c(1.0, 0.3), c(-0.4, 2.0), c(0.8, -0.6)];
        let mut entries = vec![c(0.0, 0.0); base.len() + 1];
        for (k, &b) in base.iter().enumerate() {
            entries[k] += b;
            entries[k + 1] -= b * u;
        }
        let p = ZeroPairing::from_signal(&ComplexSignal::new(entries).unwrap()).unwrap();
        let unit: Vec<_> = p.pairs().iter().filter(|q| q.on_unit_circle).collect();
        assert_eq!(unit.len(), 1);
        assert!((unit[0].gamma - u).norm() < 1e-6);
    }
}
