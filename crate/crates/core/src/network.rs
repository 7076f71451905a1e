//! The threshold diffusion model with marketing.
//!
//! A network assigns every ordered agent pair a non-negative influence
//! weight, and every agent a propensity (responsiveness to marketing,
//! any sign) and a threshold (resistance to adoption, any sign). A
//! marketing campaign is a non-negative spending function. Diffusion from
//! a seed set proceeds in rounds: agent `b` adopts once
//!
//! ```text
//! propensity(b) * spend(b) + sum of weight(a, b) over active a  >=  threshold(b)
//! ```
//!
//! The comparison is non-strict and exact, which makes boundary cases
//! meaningful: an agent with threshold `<= 0` adopts in the first round of
//! any diffusion, even from an empty seed, and seeds are active by fiat
//! regardless of their thresholds. Self-loops are legal; a self-loop only
//! contributes pressure once its agent is already active, so it can never
//! trigger its own activation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::scalar::Scalar;

/// Agents are named by strings; sets of them are ordered for determinism.
pub type AgentId = String;
pub type AgentSet = BTreeSet<AgentId>;

/// Renders a set as `{a, b, c}` (sorted, comma-separated).
pub fn render_agent_set(set: &AgentSet) -> String {
    let mut out = String::from("{");
    for (i, agent) in set.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{agent}");
    }
    out.push('}');
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("unknown agent identifier `{0}`")]
    UnknownAgent(AgentId),
    #[error("negative influence weight on edge {from} -> {to}")]
    NegativeWeight { from: AgentId, to: AgentId },
    #[error("missing propensity for agent `{0}`")]
    MissingPropensity(AgentId),
    #[error("missing threshold for agent `{0}`")]
    MissingThreshold(AgentId),
    #[error("negative spend on agent `{0}`")]
    NegativeSpend(AgentId),
}

/// A social network: finite agent set plus influence weights, propensities
/// and thresholds. Immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocialNetwork<T> {
    agents: AgentSet,
    /// Outgoing influence per agent; absent entries mean zero.
    weights: BTreeMap<AgentId, BTreeMap<AgentId, T>>,
    propensity: BTreeMap<AgentId, T>,
    threshold: BTreeMap<AgentId, T>,
}

impl<T: Scalar> SocialNetwork<T> {
    /// Builds a network, validating that weights are non-negative, that
    /// every edge endpoint is a known agent, and that propensity and
    /// threshold are total over the agent set. Zero-weight edges are
    /// dropped; absent edges mean zero influence.
    pub fn new(
        agents: impl IntoIterator<Item = AgentId>,
        weights: impl IntoIterator<Item = ((AgentId, AgentId), T)>,
        propensity: BTreeMap<AgentId, T>,
        threshold: BTreeMap<AgentId, T>,
    ) -> Result<Self, NetworkError> {
        let agents: AgentSet = agents.into_iter().collect();
        let mut kept: BTreeMap<AgentId, BTreeMap<AgentId, T>> = BTreeMap::new();
        for ((from, to), w) in weights {
            if !agents.contains(&from) {
                return Err(NetworkError::UnknownAgent(from));
            }
            if !agents.contains(&to) {
                return Err(NetworkError::UnknownAgent(to));
            }
            if w.is_negative() {
                return Err(NetworkError::NegativeWeight { from, to });
            }
            if !w.is_zero() {
                kept.entry(from).or_default().insert(to, w);
            }
        }
        for key in propensity.keys().chain(threshold.keys()) {
            if !agents.contains(key) {
                return Err(NetworkError::UnknownAgent(key.clone()));
            }
        }
        for agent in &agents {
            if !propensity.contains_key(agent) {
                return Err(NetworkError::MissingPropensity(agent.clone()));
            }
            if !threshold.contains_key(agent) {
                return Err(NetworkError::MissingThreshold(agent.clone()));
            }
        }
        Ok(Self { agents, weights: kept, propensity, threshold })
    }

    pub fn agents(&self) -> &AgentSet {
        &self.agents
    }

    pub fn contains(&self, agent: &str) -> bool {
        self.agents.contains(agent)
    }

    /// Influence of `from` on `to`; zero when no edge is recorded.
    pub fn weight(&self, from: &str, to: &str) -> T {
        self.weights
            .get(from)
            .and_then(|out| out.get(to))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Iterates the non-zero influence edges in deterministic order.
    pub fn edges(&self) -> impl Iterator<Item = (&AgentId, &AgentId, &T)> {
        self.weights.iter().flat_map(|(f, out)| out.iter().map(move |(t, w)| (f, t, w)))
    }

    pub fn propensity_of(&self, agent: &str) -> &T {
        &self.propensity[agent]
    }

    pub fn threshold_of(&self, agent: &str) -> &T {
        &self.threshold[agent]
    }

    fn check_members(&self, set: &AgentSet) -> Result<(), NetworkError> {
        for agent in set {
            if !self.agents.contains(agent) {
                return Err(NetworkError::UnknownAgent(agent.clone()));
            }
        }
        Ok(())
    }

    fn check_spending(&self, s: &SpendingFunction<T>) -> Result<(), NetworkError> {
        for (agent, _) in s.iter() {
            if !self.agents.contains(agent) {
                return Err(NetworkError::UnknownAgent(agent.clone()));
            }
        }
        Ok(())
    }

    /// One diffusion round: the active set plus every agent whose marketing
    /// pressure and peer pressure together reach its threshold.
    pub fn diffuse_step(
        &self,
        active: &AgentSet,
        spending: &SpendingFunction<T>,
    ) -> Result<AgentSet, NetworkError> {
        self.check_members(active)?;
        self.check_spending(spending)?;
        Ok(self.step_unchecked(active, spending))
    }

    fn step_unchecked(&self, active: &AgentSet, spending: &SpendingFunction<T>) -> AgentSet {
        let mut next = active.clone();
        for agent in &self.agents {
            if next.contains(agent) {
                continue;
            }
            let mut pressure = self.propensity[agent].clone() * spending.get(agent);
            for a in active {
                if let Some(w) = self.weights.get(a).and_then(|out| out.get(agent)) {
                    pressure = pressure + w.clone();
                }
            }
            if pressure >= self.threshold[agent] {
                next.insert(agent.clone());
            }
        }
        next
    }

    /// Runs diffusion from `seed` to its fixpoint and returns the full
    /// chain. The final two entries of the trace are equal (the fixpoint
    /// is witnessed by one stationary round).
    pub fn diffuse_fixpoint(
        &self,
        seed: &AgentSet,
        spending: &SpendingFunction<T>,
    ) -> Result<DiffusionTrace<T>, NetworkError> {
        self.check_members(seed)?;
        self.check_spending(spending)?;
        let mut steps = vec![seed.clone()];
        loop {
            let next = self.step_unchecked(steps.last().expect("non-empty"), spending);
            let done = next == *steps.last().expect("non-empty");
            steps.push(next);
            if done {
                break;
            }
        }
        Ok(DiffusionTrace { steps, spending: spending.clone() })
    }

    /// Combines two campaigns into one: spends add on agents receptive or
    /// indifferent to marketing (propensity `>= 0`) and are zeroed on
    /// agents that marketing repels. The combined campaign is at least as
    /// effective as running the two in sequence.
    pub fn merge_campaigns(
        &self,
        first: &SpendingFunction<T>,
        second: &SpendingFunction<T>,
    ) -> Result<SpendingFunction<T>, NetworkError> {
        self.check_spending(first)?;
        self.check_spending(second)?;
        let mut merged = BTreeMap::new();
        let keys: AgentSet = first.iter().chain(second.iter()).map(|(a, _)| a.clone()).collect();
        for agent in keys {
            if self.propensity[&agent].is_negative() {
                continue;
            }
            let total = first.get(&agent) + second.get(&agent);
            if !total.is_zero() {
                merged.insert(agent, total);
            }
        }
        Ok(SpendingFunction { spend: merged })
    }
}

/// A marketing campaign: non-negative spend per agent, absent means zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpendingFunction<T> {
    spend: BTreeMap<AgentId, T>,
}

impl<T: Scalar> SpendingFunction<T> {
    /// The zero campaign.
    pub fn zero() -> Self {
        Self { spend: BTreeMap::new() }
    }

    /// Builds a campaign from per-agent spends, rejecting negative values.
    /// Zero entries are dropped so equal campaigns compare equal.
    pub fn new(spend: impl IntoIterator<Item = (AgentId, T)>) -> Result<Self, NetworkError> {
        let mut kept = BTreeMap::new();
        for (agent, amount) in spend {
            if amount.is_negative() {
                return Err(NetworkError::NegativeSpend(agent));
            }
            if !amount.is_zero() {
                kept.insert(agent, amount);
            }
        }
        Ok(Self { spend: kept })
    }

    pub fn get(&self, agent: &str) -> T {
        self.spend.get(agent).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AgentId, &T)> {
        self.spend.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.spend.is_empty()
    }

    /// Total budget: the sum of all spends.
    pub fn norm(&self) -> T {
        self.spend.values().fold(T::zero(), |acc, v| acc + v.clone())
    }
}

/// The diffusion chain from a seed to its fixpoint, together with the
/// campaign that drove it. The chain is monotone; the last two entries are
/// equal; the list holds at most `|agents| + 2` sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffusionTrace<T> {
    steps: Vec<AgentSet>,
    spending: SpendingFunction<T>,
}

impl<T: Scalar> DiffusionTrace<T> {
    /// Every recorded round, including the final stationary one.
    pub fn steps(&self) -> &[AgentSet] {
        &self.steps
    }

    /// The strictly growing prefix of the chain: all rounds up to and
    /// including the first fixpoint, without the stationary repeat.
    pub fn chain(&self) -> &[AgentSet] {
        &self.steps[..self.steps.len() - 1]
    }

    /// The set every long-enough diffusion reaches.
    pub fn fixpoint(&self) -> &AgentSet {
        self.steps.last().expect("trace is never empty")
    }

    pub fn spending(&self) -> &SpendingFunction<T> {
        &self.spending
    }
}
