use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use super::pp::{IndexSet, PPInstance};
use super::HardnessError;
use crate::signal::ComplexSignal;
use crate::solvers::{PRInstance, DEFAULT_GRID_MULT};
use crate::ztransform::{RootPair, ZeroPairing};

/// Largest magnitude `u_max^{2N}` allowed when converting to floating point.
const FLOAT_LIMIT_BITS: u64 = 52;

/// A signal with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSignal(Vec<BigRational>);

impl ExactSignal {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(BigRational::is_integer)
    }

    /// `r(n) = Σₖ x(k) x(k+n)` for `n ≥ 0`.
    pub fn autocorrelation_lag(&self, n: usize) -> BigRational {
        self.0.iter().zip(self.0.iter().skip(n)).map(|(a, b)| a * b).sum()
    }

    /// `X(z) = Σₖ x(k) z^{-k}`, exactly.
    pub fn eval_ztransform(&self, z: &BigRational) -> BigRational {
        let w = z.recip();
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * &w + c)
    }

    pub fn to_complex(&self) -> ComplexSignal {
        let entries = self.0.iter().map(|v| Complex64::new(rational_to_f64(v), 0.0)).collect();
        ComplexSignal::new(entries).expect("finite entries")
    }
}

pub(crate) fn rational_to_f64(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// The phase retrieval instance built from a Product Partition list.
#[derive(Debug, Clone)]
pub struct HardInstance {
    pp: PPInstance,
    x0: BigInt,
    scale: BigInt,
    pr: Option<PRInstance>,
    ground_truth: Option<ExactSignal>,
}

impl HardInstance {
    /// Exact construction only; never fails for a valid list.
    pub fn exact(pp: &PPInstance) -> Self {
        let n = pp.len();
        let x0 = BigInt::from(pp.u_max()).pow(n - 1);
        let scale = &x0 * &x0 * BigInt::from(pp.last());
        Self { pp: pp.clone(), x0, scale, pr: None, ground_truth: None }
    }

    /// Exact construction plus the floating-point solver instance.
    pub fn with_float(pp: &PPInstance, grid_mult: usize) -> Result<Self, HardnessError> {
        let mut hard = Self::exact(pp);
        let n = pp.len();
        let bound = BigInt::from(pp.u_max()).pow(2 * n);
        if bound > BigInt::one() << FLOAT_LIMIT_BITS {
            return Err(HardnessError::OverflowBeyondPrecision { u_max: pp.u_max(), exponent: 2 * n });
        }
        let pairs = pp
            .head()
            .iter()
            .map(|&u| {
                let u = u as f64;
                RootPair { gamma: Complex64::new(-u, 0.0), gamma_recip: Complex64::new(-1.0 / u, 0.0), on_unit_circle: false }
            })
            .collect();
        let scale = Complex64::new(hard.scale.to_f64().expect("below 2^52"), 0.0);
        let pairing = ZeroPairing::new(scale, pairs)?;
        let anchor = Complex64::new(hard.x0.to_f64().expect("below 2^52"), 0.0);
        hard.pr = Some(PRInstance::new(pairing, anchor, grid_mult)?);
        Ok(hard)
    }

    /// Attaches the exact signal for a witness `Γ`.
    pub fn with_ground_truth(mut self, gamma: &IndexSet) -> Result<Self, HardnessError> {
        self.ground_truth = Some(ground_truth_signal(&self.pp, gamma)?);
        Ok(self)
    }

    pub fn pp(&self) -> &PPInstance {
        &self.pp
    }

    /// `x(0) = u_max^{N-1}`.
    pub fn x0(&self) -> &BigInt {
        &self.x0
    }

    /// `r(N-1) = x(0)² u_N`.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// `(-u_k, -1/u_k)` for `k = 1..N-1`.
    pub fn exact_pairs(&self) -> Vec<(BigRational, BigRational)> {
        self.pp
            .head()
            .iter()
            .map(|&u| {
                let u = BigRational::from_integer(BigInt::from(u));
                (-u.clone(), -u.recip())
            })
            .collect()
    }

    pub fn pr(&self) -> Option<&PRInstance> {
        self.pr.as_ref()
    }

    pub fn ground_truth(&self) -> Option<&ExactSignal> {
        self.ground_truth.as_ref()
    }
}

/// Builds the solver instance with the default grid. The ground truth is left
/// unset.
pub fn construct_hard_instance(pp: &PPInstance) -> Result<HardInstance, HardnessError> {
    HardInstance::with_float(pp, DEFAULT_GRID_MULT)
}

/// Expands `x(0) z^{-(N-1)} ∏ (z - β_k)` with `β_k = -u_k` on `Γ` and
/// `-1/u_k` off it.
pub fn ground_truth_signal(pp: &PPInstance, gamma: &IndexSet) -> Result<ExactSignal, HardnessError> {
    if !pp.is_witness(gamma) {
        return Err(HardnessError::InvalidWitness(gamma.clone()));
    }
    let x0 = BigRational::from_integer(HardInstance::exact(pp).x0);
    let mut coeffs = vec![x0];
    for (i, &u) in pp.head().iter().enumerate() {
        let u = BigRational::from_integer(BigInt::from(u));
        let beta = if gamma.contains(&(i + 1)) { -u } else { -u.recip() };
        coeffs.push(BigRational::zero());
        for j in (1..coeffs.len()).rev() {
            let carry = &beta * &coeffs[j - 1];
            coeffs[j] -= carry;
        }
    }
    Ok(ExactSignal(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> IndexSet {
        v.iter().copied().collect()
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn construction_examples() {
        for (u, x0, scale) in [(vec![2, 3, 6], 9, 486), (vec![2, 3, 5], 9, 405), (vec![2, 2, 3, 3], 27, 2187)] {
            let pp = PPInstance::new(u).unwrap();
            let hard = construct_hard_instance(&pp).unwrap();
            assert_eq!(hard.x0(), &BigInt::from(x0));
            assert_eq!(hard.scale(), &BigInt::from(scale));
            assert!(hard.ground_truth().is_none());
            let pr = hard.pr().unwrap();
            assert_eq!(pr.anchor(), Complex64::new(x0 as f64, 0.0));
            assert_eq!(pr.pairing().pairs().len(), pp.len() - 1);
            let lead = pr.autocorrelation().leading();
            assert!((lead - scale as f64).norm() < 1e-9 * scale as f64, "{lead}");
        }
        let hard = HardInstance::exact(&PPInstance::new(vec![2, 3, 6]).unwrap());
        assert_eq!(hard.exact_pairs(), vec![(int(-2), frac(-1, 2)), (int(-3), frac(-1, 3))]);
    }

    #[test]
    fn overflow_is_reported() {
        // 6^22 > 2^52
        let pp = PPInstance::new(vec![6; 11]).unwrap();
        assert_eq!(
            construct_hard_instance(&pp).unwrap_err(),
            HardnessError::OverflowBeyondPrecision { u_max: 6, exponent: 22 }
        );
        let hard = HardInstance::exact(&pp);
        assert_eq!(hard.x0(), &BigInt::from(6u64.pow(10)));
    }

    #[test]
    fn ground_truth_examples() {
        let pp = PPInstance::new(vec![2, 3, 6]).unwrap();
        let x = ground_truth_signal(&pp, &set(&[1, 2])).unwrap();
        assert_eq!(x.entries(), &[int(9), int(45), int(54)]);
        assert!(x.is_integral());
        assert_eq!(x.autocorrelation_lag(2), int(486));

        let pp = PPInstance::new(vec![2, 2, 3, 3]).unwrap();
        let x = ground_truth_signal(&pp, &set(&[1, 3])).unwrap();
        // 27 (z+2)(z+1/2)(z+3) = 27 z³ + 148.5 z² + 229.5 z + 81
        assert_eq!(x.entries(), &[int(27), frac(297, 2), frac(459, 2), int(81)]);
        assert!(!x.is_integral());
        assert_eq!(x.autocorrelation_lag(3), int(2187));

        assert_eq!(
            ground_truth_signal(&PPInstance::new(vec![2, 3, 6]).unwrap(), &set(&[2])),
            Err(HardnessError::InvalidWitness(set(&[2])))
        );
    }

    #[test]
    fn exact_evaluation_finds_roots() {
        let pp = PPInstance::new(vec![2, 2, 3, 3]).unwrap();
        let x = ground_truth_signal(&pp, &set(&[1, 3])).unwrap();
        for z in [int(-2), frac(-1, 2), int(-3)] {
            assert!(x.eval_ztransform(&z).is_zero());
        }
        assert!(!x.eval_ztransform(&frac(-1, 3)).is_zero());
    }
}
