//! Canonical networks: executable bridges between syntax and semantics.
//!
//! Each construction turns an atomic hypothesis set into a network on
//! which an influence atom holds semantically exactly when it is derivable
//! syntactically, making the two completeness directions testable by
//! simulation.
//!
//! Promotional construction: every hypothesis `A_i |>p_i B_i` gets a
//! gate pair — a marketing-only agent `alpha_i` (propensity 1, threshold
//! `p_i`, no incoming influence) and a collector `beta_i` that needs
//! simultaneous pressure from all of `A_i` and `alpha_i` before relaying
//! influence to every member of `B_i`. Buying `alpha_i` at exactly `p_i`
//! is the only way to fire the hypothesis.
//!
//! Preventive construction: for every syntactic closure label
//! `(closure, p)` there is a gate `alpha` (propensity −1, threshold
//! `epsilon − p`) feeding a relay `beta` that is cross-linked with the
//! agents outside the closure. An adversary spending just above `p −
//! epsilon` on the gate silences the relay and with it everything outside
//! the closure; cheaper campaigns leave the relay live. `epsilon` is any
//! positive value smaller than every gap between distinct budgets; here it
//! is fixed to `min(1, smallest positive gap / 2)`, and 1 when fewer than
//! two budgets exist.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::logic::{preventive_closure, HypothesisSet, LogicError};
use crate::network::{AgentId, AgentSet, SocialNetwork};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("budget set is missing hypothesis budget {0}")]
    MissingBudget(String),
    #[error("negative budget {0} in budget set")]
    NegativeBudget(String),
    #[error("universe of {0} agents is too large for closure enumeration (limit {PREVENTIVE_UNIVERSE_LIMIT})")]
    UniverseTooLarge(usize),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// The preventive construction enumerates every subset of the universe.
const PREVENTIVE_UNIVERSE_LIMIT: usize = 20;

/// The promotional canonical network plus its gate-agent bookkeeping.
/// `alpha[i]`/`beta[i]` name the agents of hypothesis `i` (0-based here,
/// 1-based in the generated identifiers).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromoCanonical<T> {
    pub network: SocialNetwork<T>,
    pub alpha: Vec<AgentId>,
    pub beta: Vec<AgentId>,
    pub base: AgentSet,
}

/// One preventive label: a syntactic closure together with the budget
/// level it was computed at. Labels with equal closures but different
/// budgets stay distinct.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClosureLabel<T> {
    pub budget: T,
    pub closure: AgentSet,
}

/// The preventive canonical network plus its label bookkeeping.
/// `alpha[k]`/`beta[k]` name the agents of `labels[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrevCanonical<T> {
    pub network: SocialNetwork<T>,
    pub labels: Vec<ClosureLabel<T>>,
    pub alpha: Vec<AgentId>,
    pub beta: Vec<AgentId>,
    pub epsilon: T,
    pub budgets: BTreeSet<T>,
    pub base: AgentSet,
}

/// `base`, then `base_`, `base__`, ... until the name is fresh.
fn fresh_id(base: String, taken: &mut BTreeSet<AgentId>) -> AgentId {
    let mut id = base;
    while taken.contains(&id) {
        id.push('_');
    }
    taken.insert(id.clone());
    id
}

/// Builds the promotional canonical network for an atomic hypothesis set.
pub fn build_promotional_canonical<T: Scalar>(x: &HypothesisSet<T>) -> PromoCanonical<T> {
    let base = x.universe().clone();
    let mut taken = base.clone();
    let alpha: Vec<AgentId> =
        (1..=x.hypotheses().len()).map(|i| fresh_id(format!("alpha_{i}"), &mut taken)).collect();
    let beta: Vec<AgentId> =
        (1..=x.hypotheses().len()).map(|i| fresh_id(format!("beta_{i}"), &mut taken)).collect();

    let one = T::one();
    let mut weights: BTreeMap<(AgentId, AgentId), T> = BTreeMap::new();
    let mut propensity: BTreeMap<AgentId, T> = BTreeMap::new();
    let mut threshold: BTreeMap<AgentId, T> = BTreeMap::new();

    for agent in &base {
        propensity.insert(agent.clone(), T::zero());
        threshold.insert(agent.clone(), one.clone());
    }
    for (i, hyp) in x.hypotheses().iter().enumerate() {
        propensity.insert(alpha[i].clone(), one.clone());
        threshold.insert(alpha[i].clone(), hyp.budget.clone());
        propensity.insert(beta[i].clone(), T::zero());
        threshold.insert(beta[i].clone(), T::from_usize(hyp.left.len() + 1).expect("small count"));
        for a in hyp.left.iter().chain(std::iter::once(&alpha[i])) {
            weights.insert((a.clone(), beta[i].clone()), one.clone());
        }
        for b in &hyp.right {
            weights.insert((beta[i].clone(), b.clone()), one.clone());
        }
    }

    let agents = taken;
    let network = SocialNetwork::new(agents, weights, propensity, threshold)
        .expect("construction is valid by design");
    PromoCanonical { network, alpha, beta, base }
}

/// `min(1, g/2)` for the smallest positive gap `g` between budgets; 1 when
/// fewer than two budgets exist.
pub fn epsilon_for_budgets<T: Scalar>(budgets: &BTreeSet<T>) -> T {
    let one = T::one();
    let two = T::from_u8(2).expect("small constant");
    let mut eps = one.clone();
    let sorted: Vec<&T> = budgets.iter().collect();
    for pair in sorted.windows(2) {
        let half = (pair[1].clone() - pair[0].clone()) / two.clone();
        if half < eps {
            eps = half;
        }
    }
    eps
}

/// Builds the preventive canonical network for an atomic hypothesis set
/// and a budget set `P` covering every hypothesis budget (plus whatever
/// query budgets the caller intends to use).
pub fn build_preventive_canonical<T: Scalar>(
    x: &HypothesisSet<T>,
    budgets: &BTreeSet<T>,
) -> Result<PrevCanonical<T>, CanonicalError> {
    if x.universe().len() > PREVENTIVE_UNIVERSE_LIMIT {
        return Err(CanonicalError::UniverseTooLarge(x.universe().len()));
    }
    for b in budgets {
        if b.is_negative() {
            return Err(CanonicalError::NegativeBudget(b.to_string()));
        }
    }
    for hyp in x.hypotheses() {
        if !budgets.contains(&hyp.budget) {
            return Err(CanonicalError::MissingBudget(hyp.budget.to_string()));
        }
    }
    let epsilon = epsilon_for_budgets(budgets);
    let base = x.universe().clone();

    // Labels: deduplicated (closure, budget) pairs over every subset of
    // the universe and every budget.
    let universe_vec: Vec<AgentId> = base.iter().cloned().collect();
    let mut label_set: BTreeSet<ClosureLabel<T>> = BTreeSet::new();
    for p in budgets {
        for mask in 0u32..(1u32 << universe_vec.len()) {
            let seed: AgentSet = universe_vec
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, a)| a.clone())
                .collect();
            let closure = preventive_closure(x, &seed, p)?;
            label_set.insert(ClosureLabel { budget: p.clone(), closure });
        }
    }
    let labels: Vec<ClosureLabel<T>> = label_set.into_iter().collect();

    let mut taken = base.clone();
    let alpha: Vec<AgentId> =
        (1..=labels.len()).map(|k| fresh_id(format!("alpha_{k}"), &mut taken)).collect();
    let beta: Vec<AgentId> =
        (1..=labels.len()).map(|k| fresh_id(format!("beta_{k}"), &mut taken)).collect();

    let one = T::one();
    let mut weights: BTreeMap<(AgentId, AgentId), T> = BTreeMap::new();
    let mut propensity: BTreeMap<AgentId, T> = BTreeMap::new();
    let mut threshold: BTreeMap<AgentId, T> = BTreeMap::new();

    for agent in &base {
        let gate_count = labels.iter().filter(|l| !l.closure.contains(agent)).count();
        propensity.insert(agent.clone(), T::zero());
        threshold.insert(agent.clone(), T::from_usize(gate_count).expect("small count"));
    }
    for (k, label) in labels.iter().enumerate() {
        propensity.insert(alpha[k].clone(), -one.clone());
        threshold.insert(alpha[k].clone(), epsilon.clone() - label.budget.clone());
        propensity.insert(beta[k].clone(), T::zero());
        threshold.insert(beta[k].clone(), one.clone());
        weights.insert((alpha[k].clone(), beta[k].clone()), one.clone());
        for outside in base.difference(&label.closure) {
            weights.insert((outside.clone(), beta[k].clone()), one.clone());
            weights.insert((beta[k].clone(), outside.clone()), one.clone());
        }
    }

    let agents = taken;
    let network = SocialNetwork::new(agents, weights, propensity, threshold)
        .expect("construction is valid by design");
    Ok(PrevCanonical { network, labels, alpha, beta, epsilon, budgets: budgets.clone(), base })
}
