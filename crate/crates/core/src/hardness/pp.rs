use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;

use super::HardnessError;

/// 1-based positions into the Product Partition list.
pub type IndexSet = BTreeSet<usize>;

/// Largest list handled by [`brute_force_pp`] (`2^25` subsets).
pub const MAX_BRUTE_FORCE_LEN: usize = 26;

/// Integers `u₁..u_N ≥ 2`; the question is whether some `Γ ⊆ {1..N-1}`
/// has `∏_Γ u_k = u_N ∏_{Γᶜ} u_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PPInstance {
    u: Vec<u64>,
}

impl PPInstance {
    /// Requires `N ≥ 2`, every `u_k ≥ 2`, and `max(u₁..u_{N-1}) ≥ 3`.
    pub fn new(u: Vec<u64>) -> Result<Self, HardnessError> {
        let pp = Self::with_values(u)?;
        if pp.u_max() < 3 {
            return Err(HardnessError::UMaxTooSmall { u_max: pp.u_max() });
        }
        Ok(pp)
    }

    /// As [`PPInstance::new`] without the `u_max ≥ 3` requirement. The
    /// decision loop shrinks instances below it.
    pub fn with_values(u: Vec<u64>) -> Result<Self, HardnessError> {
        if u.len() < 2 {
            return Err(HardnessError::TooShort(u.len()));
        }
        if let Some((i, &value)) = u.iter().enumerate().find(|(_, &v)| v < 2) {
            return Err(HardnessError::ValueTooSmall { index: i + 1, value });
        }
        Ok(Self { u })
    }

    pub fn values(&self) -> &[u64] {
        &self.u
    }

    /// `N`.
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    /// `u₁..u_{N-1}`, the values that become zero pairs.
    pub fn head(&self) -> &[u64] {
        &self.u[..self.u.len() - 1]
    }

    /// `u_N`.
    pub fn last(&self) -> u64 {
        self.u[self.u.len() - 1]
    }

    /// `max(u₁..u_{N-1})`.
    pub fn u_max(&self) -> u64 {
        self.head().iter().copied().max().unwrap_or(0)
    }

    /// `u_k` for a 1-based index.
    pub fn value(&self, k: usize) -> u64 {
        self.u[k - 1]
    }

    /// `∏_Γ u_k / ∏_{Γᶜ} u_k` over `{1..N-1}`, exactly.
    pub fn quotient(&self, gamma: &IndexSet) -> BigRational {
        let (num, den) = self.products(gamma);
        BigRational::new(num.into(), den.into())
    }

    fn products(&self, gamma: &IndexSet) -> (BigUint, BigUint) {
        let mut inside = BigUint::from(1u32);
        let mut outside = BigUint::from(1u32);
        for (i, &v) in self.head().iter().enumerate() {
            if gamma.contains(&(i + 1)) {
                inside *= v;
            } else {
                outside *= v;
            }
        }
        (inside, outside)
    }

    /// `∏_Γ u_k = u_N ∏_{Γᶜ} u_k` with `Γ ⊆ {1..N-1}`.
    pub fn is_witness(&self, gamma: &IndexSet) -> bool {
        if gamma.iter().any(|&k| k == 0 || k >= self.u.len()) {
            return false;
        }
        let (inside, outside) = self.products(gamma);
        inside == outside * self.last()
    }
}

impl fmt::Display for PPInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.u.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PPAnswer {
    HasSolution,
    NoSolution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PPDecision {
    pub answer: PPAnswer,
    /// Full witness over the original indices, when one was found.
    pub witness: Option<IndexSet>,
    /// Index pairs with equal values removed by the decision loop, in order.
    pub removed_pairs: Vec<(usize, usize)>,
    /// `∏_{Γ₁} u / ∏_{Γ₂} u` of the final round, if one completed.
    pub quot: Option<BigRational>,
    /// Solver invocations.
    pub rounds: usize,
}

impl PPDecision {
    pub fn has_solution(&self) -> bool {
        self.answer == PPAnswer::HasSolution
    }
}

pub(crate) fn format_set(set: &IndexSet) -> String {
    let parts: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for PPDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.answer, &self.witness) {
            (PPAnswer::HasSolution, Some(w)) => {
                write!(f, "The product partition problem has a solution Γ = {}", format_set(w))
            }
            (PPAnswer::HasSolution, None) => write!(f, "The product partition problem has a solution"),
            (PPAnswer::NoSolution, _) => write!(f, "The product partition problem has no solution"),
        }
    }
}

/// Exhaustive search in subset-integer order: bit `k-1` of the mask puts
/// index `k` in `Γ`.
pub fn brute_force_pp(pp: &PPInstance) -> Result<PPDecision, HardnessError> {
    if pp.len() > MAX_BRUTE_FORCE_LEN {
        return Err(HardnessError::BudgetExceeded { len: pp.len(), max: MAX_BRUTE_FORCE_LEN });
    }
    let head = pp.head();
    let last = BigUint::from(pp.last());
    for mask in 0u64..1 << head.len() {
        let mut inside = BigUint::from(1u32);
        let mut outside = last.clone();
        for (i, &v) in head.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                inside *= v;
            } else {
                outside *= v;
            }
        }
        if inside == outside {
            let witness = (0..head.len()).filter(|i| (mask >> i) & 1 == 1).map(|i| i + 1).collect();
            return Ok(PPDecision {
                answer: PPAnswer::HasSolution,
                witness: Some(witness),
                removed_pairs: Vec::new(),
                quot: None,
                rounds: 0,
            });
        }
    }
    Ok(PPDecision { answer: PPAnswer::NoSolution, witness: None, removed_pairs: Vec::new(), quot: None, rounds: 0 })
}
