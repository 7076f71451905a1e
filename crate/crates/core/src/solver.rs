//! Exact decision procedures for both atom semantics.
//!
//! Promotional side: [`min_promotion_budget`] finds the cheapest campaign
//! that spreads adoption from a seed set to a target set. It runs a
//! uniform-cost search over diffusion-closed active sets: from a closed
//! state, the marginal price of an inactive agent `b` with positive
//! propensity is `(threshold(b) - pressure(b)) / propensity(b)`, charged
//! once at activation; every paid activation is followed by closure under
//! free diffusion. Money on agents with non-positive propensity never
//! helps, marginal prices only fall as the active set grows, and the
//! non-strict activation rule makes the minimum attained.
//!
//! Preventive side: [`min_blocking_budget`] plays the adversary, who wants
//! to keep part of the target set inactive. Spending on agents with
//! non-negative propensity never shrinks a diffusion, so an adversarial
//! campaign is characterised by the set `D` of negative-propensity agents
//! it holds out. Holding `d` out costs spend strictly above
//! `(pressure(d) - threshold(d)) / |propensity(d)|` at the blocked
//! fixpoint, so per-clamp bounds are open whenever the agent is
//! over-pressured and the overall minimum is an infimum with an
//! attainment flag: it is attained exactly when the zero campaign already
//! misses the target. The search enumerates clamp sets best-first with
//! admissible lower bounds; see `clamp_search` for the pruning rules and
//! why they preserve exact minima.
//!
//! [`oracle_promotion`] and [`oracle_blocking`] re-derive the same answers
//! by brute force on small instances — activation-order enumeration and
//! exhaustive clamp-set probing through the public diffusion semantics —
//! and exist to cross-check the searches.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::network::{AgentId, AgentSet, NetworkError, SocialNetwork, SpendingFunction};
use crate::scalar::Scalar;

/// Outcome of the cheapest-promotion computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PromotionResult<T> {
    /// No campaign reaches the target, however large.
    Infeasible,
    /// The exact minimum total budget, with a campaign attaining it.
    Feasible { min_budget: T, witness: SpendingFunction<T> },
}

/// Outcome of the cheapest-blocking computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockingResult<T> {
    /// Every campaign lets the seed reach the target.
    Unblockable,
    /// The exact infimum of blocking budgets. When `attained` is false,
    /// every budget strictly above the infimum blocks but the infimum
    /// itself does not. `witness_set` is the clamped agent set of the
    /// optimal interdiction.
    Blockable { infimum: T, attained: bool, witness_set: AgentSet },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("{what}: instance too large (limit {limit}, got {actual})")]
    TooLarge { what: &'static str, limit: usize, actual: usize },
}

// ---------------------------------------------------------------------------
// Indexed view of a network for the search loops
// ---------------------------------------------------------------------------

struct Compiled<T> {
    ids: Vec<AgentId>,
    out: Vec<Vec<(usize, T)>>,
    theta: Vec<T>,
    lambda: Vec<T>,
}

impl<T: Scalar> Compiled<T> {
    fn new(net: &SocialNetwork<T>) -> Self {
        let ids: Vec<AgentId> = net.agents().iter().cloned().collect();
        let index: BTreeMap<&str, usize> =
            ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
        let mut out = vec![Vec::new(); ids.len()];
        for (from, to, w) in net.edges() {
            out[index[from.as_str()]].push((index[to.as_str()], w.clone()));
        }
        let theta = ids.iter().map(|id| net.threshold_of(id).clone()).collect();
        let lambda = ids.iter().map(|id| net.propensity_of(id).clone()).collect();
        Self { ids, out, theta, lambda }
    }

    fn index_of(&self, agent: &AgentId) -> usize {
        self.ids.binary_search(agent).expect("agent validated")
    }

    fn index_set(&self, set: &AgentSet) -> BTreeSet<usize> {
        set.iter().map(|a| self.index_of(a)).collect()
    }

    /// Least fixpoint of zero-spend diffusion from `seed` with `clamped`
    /// held inactive. Returns the active flags and, for every agent, the
    /// total incoming weight from the final active set.
    fn closure(&self, seed: &BTreeSet<usize>, clamped: &BTreeSet<usize>) -> (Vec<bool>, Vec<T>) {
        let n = self.ids.len();
        let mut active = vec![false; n];
        let mut pressure: Vec<T> = (0..n).map(|_| T::zero()).collect();
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &i in seed {
            active[i] = true;
            queue.push_back(i);
        }
        for i in 0..n {
            if !active[i] && !clamped.contains(&i) && pressure[i] >= self.theta[i] {
                active[i] = true;
                queue.push_back(i);
            }
        }
        while let Some(a) = queue.pop_front() {
            for (b, w) in &self.out[a] {
                let b = *b;
                pressure[b] = pressure[b].clone() + w.clone();
                if !active[b] && !clamped.contains(&b) && pressure[b] >= self.theta[b] {
                    active[b] = true;
                    queue.push_back(b);
                }
            }
        }
        (active, pressure)
    }
}

fn to_index_set(active: &[bool]) -> BTreeSet<usize> {
    active.iter().enumerate().filter(|(_, a)| **a).map(|(i, _)| i).collect()
}

fn check_sets<T: Scalar>(net: &SocialNetwork<T>, sets: &[&AgentSet]) -> Result<(), NetworkError> {
    for set in sets {
        for agent in set.iter() {
            if !net.contains(agent) {
                return Err(NetworkError::UnknownAgent(agent.clone()));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Promotion
// ---------------------------------------------------------------------------

/// Exact minimum of the total budget over campaigns that spread adoption
/// from `from` to all of `to`, with a witness campaign attaining it.
pub fn min_promotion_budget<T: Scalar>(
    net: &SocialNetwork<T>,
    from: &AgentSet,
    to: &AgentSet,
) -> Result<PromotionResult<T>, NetworkError> {
    check_sets(net, &[from, to])?;
    let c = Compiled::new(net);
    let no_clamp = BTreeSet::new();
    let goal = c.index_set(to);
    let (act0, _) = c.closure(&c.index_set(from), &no_clamp);
    let start = to_index_set(&act0);

    if goal.is_subset(&start) {
        return Ok(PromotionResult::Feasible {
            min_budget: T::zero(),
            witness: SpendingFunction::zero(),
        });
    }

    // Uniform-cost search over diffusion-closed states, popped in
    // (cost, lexicographic state) order; the first goal pop is the
    // reported minimum and witness.
    let mut dist: BTreeMap<BTreeSet<usize>, T> = BTreeMap::new();
    let mut parent: BTreeMap<BTreeSet<usize>, (BTreeSet<usize>, usize, T)> = BTreeMap::new();
    let mut queue: BTreeSet<(T, BTreeSet<usize>)> = BTreeSet::new();
    dist.insert(start.clone(), T::zero());
    queue.insert((T::zero(), start));

    while let Some((cost, state)) = queue.pop_first() {
        if goal.is_subset(&state) {
            let mut spends: BTreeMap<AgentId, T> = BTreeMap::new();
            let mut cursor = state;
            while let Some((prev, bought, price)) = parent.get(&cursor) {
                spends.insert(c.ids[*bought].clone(), price.clone());
                cursor = prev.clone();
            }
            let witness = SpendingFunction::new(spends).expect("prices are positive");
            return Ok(PromotionResult::Feasible { min_budget: cost, witness });
        }
        let (_, pressure) = c.closure(&state, &no_clamp);
        for (b, felt) in pressure.iter().enumerate() {
            if state.contains(&b) || !c.lambda[b].is_positive() {
                continue;
            }
            let price = (c.theta[b].clone() - felt.clone()) / c.lambda[b].clone();
            let next_cost = cost.clone() + price.clone();
            let mut bought = state.clone();
            bought.insert(b);
            let (act, _) = c.closure(&bought, &no_clamp);
            let next_state = to_index_set(&act);
            let better = match dist.get(&next_state) {
                None => true,
                Some(old) => next_cost < *old,
            };
            if better {
                if let Some(old) = dist.get(&next_state) {
                    queue.remove(&(old.clone(), next_state.clone()));
                }
                dist.insert(next_state.clone(), next_cost.clone());
                parent.insert(next_state.clone(), (state.clone(), b, price));
                queue.insert((next_cost, next_state));
            }
        }
    }
    Ok(PromotionResult::Infeasible)
}

/// Does some campaign of total budget at most `budget` spread adoption
/// from `from` to `to`? Exact; the minimum is attained, so `<=` is the
/// right comparison.
pub fn decide_promotional<T: Scalar>(
    net: &SocialNetwork<T>,
    from: &AgentSet,
    to: &AgentSet,
    budget: &T,
) -> Result<bool, NetworkError> {
    match min_promotion_budget(net, from, to)? {
        PromotionResult::Feasible { min_budget, .. } => Ok(min_budget <= *budget),
        PromotionResult::Infeasible => Ok(false),
    }
}

// ---------------------------------------------------------------------------
// Blocking
// ---------------------------------------------------------------------------

enum ClampSearch<T> {
    /// The zero campaign already misses part of the target.
    ZeroBlocked,
    /// Even holding out every candidate leaves the target reached.
    Unblockable,
    /// Cheapest clamp set (full mode); the infimum is never attained here
    /// because the zero campaign reaches the target.
    Found { infimum: T, witness: AgentSet },
    /// Cap mode: some clamp set has infimum strictly below the cap.
    FoundWithinCap,
    /// Cap mode: no clamp set has infimum strictly below the cap.
    ExhaustedUnderCap,
}

/// Best-first enumeration of clamp sets.
///
/// Soundness of the pruning rules, all relative to the clamp-set
/// semantics `F(D)` = fixpoint from the seed with `D` held inactive:
///
/// * candidates are restricted to negative-propensity non-seed agents
///   active in the zero-spend fixpoint — clamping a never-active agent
///   leaves every `F(D)` unchanged at no lower cost;
/// * a candidate `d` outside the target whose every out-neighbour stays
///   active under maximal clamping is dropped: clamping `d` then only ever
///   removes `d` itself from a fixpoint (its neighbours never needed it),
///   so it cannot help block and cannot lower any clamp's price;
/// * the per-agent bound `(pressure at the all-clamped fixpoint -
///   threshold)^+ / |propensity|` never exceeds the agent's real price in
///   any clamp set, because fixpoints shrink as clamps grow, so the sum of
///   bounds is an admissible lower bound and the queue can stop as soon as
///   its best bound reaches the incumbent (or the cap);
/// * subsets are enumerated by ascending index, extending only with
///   currently-active candidates: an extension that is inactive at its
///   insertion point stays inactive in every further clamp set, changing
///   neither fixpoints nor costs, so each clamp set has a cost-equivalent
///   representative on the explored tree.
fn clamp_search<T: Scalar>(
    net: &SocialNetwork<T>,
    from: &AgentSet,
    to: &AgentSet,
    cap: Option<&T>,
) -> Result<ClampSearch<T>, NetworkError> {
    check_sets(net, &[from, to])?;
    let c = Compiled::new(net);
    let seed = c.index_set(from);
    let goal = c.index_set(to);

    let (act0, _) = c.closure(&seed, &BTreeSet::new());
    if !goal.iter().all(|&g| act0[g]) {
        return Ok(ClampSearch::ZeroBlocked);
    }
    if goal.is_subset(&seed) {
        return Ok(ClampSearch::Unblockable);
    }

    let candidates: BTreeSet<usize> = (0..c.ids.len())
        .filter(|&i| c.lambda[i].is_negative() && !seed.contains(&i) && act0[i])
        .collect();
    let (core_act, core_pressure) = c.closure(&seed, &candidates);
    if goal.iter().all(|&g| core_act[g]) {
        return Ok(ClampSearch::Unblockable);
    }

    let universe: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&d| goal.contains(&d) || c.out[d].iter().any(|&(b, _)| b != d && !core_act[b]))
        .collect();

    let zero = T::zero();
    let price_floor: BTreeMap<usize, T> = universe
        .iter()
        .map(|&d| {
            let slack = core_pressure[d].clone() - c.theta[d].clone();
            let bound = if slack.is_negative() { zero.clone() } else { slack / c.lambda[d].abs() };
            (d, bound)
        })
        .collect();

    let mut queue: BTreeSet<(T, Vec<usize>)> = BTreeSet::new();
    queue.insert((T::zero(), Vec::new()));
    let mut incumbent: Option<(T, Vec<usize>)> = None;

    while let Some((bound, clamp)) = queue.pop_first() {
        if let Some(q) = cap {
            if bound >= *q {
                break;
            }
        }
        if let Some((best, _)) = &incumbent {
            if bound >= *best {
                break;
            }
        }
        let clamp_set: BTreeSet<usize> = clamp.iter().copied().collect();
        let (act, pressure) = c.closure(&seed, &clamp_set);
        if !goal.iter().all(|&g| act[g]) {
            let exact = clamp.iter().fold(T::zero(), |acc, &d| {
                let slack = pressure[d].clone() - c.theta[d].clone();
                if slack.is_negative() {
                    acc
                } else {
                    acc + slack / c.lambda[d].abs()
                }
            });
            if let Some(q) = cap {
                if exact < *q {
                    return Ok(ClampSearch::FoundWithinCap);
                }
            } else {
                let better = match &incumbent {
                    None => true,
                    Some((best, _)) => exact < *best,
                };
                if better {
                    incumbent = Some((exact, clamp.clone()));
                }
            }
        }
        let next_floor = clamp.last().map_or(0, |&last| last + 1);
        for &d in universe.iter().filter(|&&d| d >= next_floor) {
            if !act[d] {
                continue;
            }
            let next_bound = bound.clone() + price_floor[&d].clone();
            if let Some(q) = cap {
                if next_bound >= *q {
                    continue;
                }
            }
            if let Some((best, _)) = &incumbent {
                if next_bound >= *best {
                    continue;
                }
            }
            let mut next = clamp.clone();
            next.push(d);
            queue.insert((next_bound, next));
        }
    }

    Ok(match (cap, incumbent) {
        (Some(_), _) => ClampSearch::ExhaustedUnderCap,
        (None, Some((infimum, clamp))) => {
            let witness = clamp.iter().map(|&d| c.ids[d].clone()).collect();
            ClampSearch::Found { infimum, witness }
        }
        // Maximal clamping blocks (checked above), and without a cap the
        // queue is only cut below the incumbent, so full mode always finds
        // one; kept as a conservative fallback.
        (None, None) => ClampSearch::Unblockable,
    })
}

/// Exact infimum of the total budget over campaigns that keep some part of
/// `to` unreached from `from`, with the attainment flag and the clamped
/// agents of the optimal interdiction.
pub fn min_blocking_budget<T: Scalar>(
    net: &SocialNetwork<T>,
    from: &AgentSet,
    to: &AgentSet,
) -> Result<BlockingResult<T>, NetworkError> {
    Ok(match clamp_search(net, from, to, None)? {
        ClampSearch::ZeroBlocked => BlockingResult::Blockable {
            infimum: T::zero(),
            attained: true,
            witness_set: AgentSet::new(),
        },
        ClampSearch::Unblockable => BlockingResult::Unblockable,
        ClampSearch::Found { infimum, witness } => {
            BlockingResult::Blockable { infimum, attained: false, witness_set: witness }
        }
        ClampSearch::FoundWithinCap | ClampSearch::ExhaustedUnderCap => {
            unreachable!("cap-mode outcome from a full search")
        }
    })
}

/// Does every campaign of total budget at most `budget` let `from` reach
/// all of `to`? True when nothing blocks, when `budget` is below the
/// blocking infimum, or when it equals an unattained infimum. A negative
/// `budget` is vacuously true (no campaign has a negative norm).
pub fn decide_preventive<T: Scalar>(
    net: &SocialNetwork<T>,
    from: &AgentSet,
    to: &AgentSet,
    budget: &T,
) -> Result<bool, NetworkError> {
    if budget.is_negative() {
        check_sets(net, &[from, to])?;
        return Ok(true);
    }
    Ok(match clamp_search(net, from, to, Some(budget))? {
        ClampSearch::ZeroBlocked => false,
        ClampSearch::Unblockable => true,
        ClampSearch::FoundWithinCap => false,
        ClampSearch::ExhaustedUnderCap => true,
        ClampSearch::Found { .. } => unreachable!("full-mode outcome from a capped search"),
    })
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

const ORACLE_PROMOTION_LIMIT: usize = 10;
const ORACLE_BLOCKING_LIMIT: usize = 12;

/// Brute-force promotion minimum: enumerates every activation order of
/// positive-propensity agents (permutations of subsets), charging each
/// purchase its marginal price at activation time and closing under free
/// diffusion in between. Guarded to small instances; must agree with
/// [`min_promotion_budget`] on them.
pub fn oracle_promotion<T: Scalar>(
    net: &SocialNetwork<T>,
    from: &AgentSet,
    to: &AgentSet,
) -> Result<PromotionResult<T>, SolverError> {
    if net.agents().len() > ORACLE_PROMOTION_LIMIT {
        return Err(SolverError::TooLarge {
            what: "oracle_promotion",
            limit: ORACLE_PROMOTION_LIMIT,
            actual: net.agents().len(),
        });
    }
    check_sets(net, &[from, to])?;
    let c = Compiled::new(net);
    let no_clamp = BTreeSet::new();
    let goal = c.index_set(to);
    let (act0, p0) = c.closure(&c.index_set(from), &no_clamp);

    struct Dfs<'a, T> {
        c: &'a Compiled<T>,
        goal: &'a BTreeSet<usize>,
        best: Option<(T, Vec<(usize, T)>)>,
    }
    impl<T: Scalar> Dfs<'_, T> {
        fn run(&mut self, active: &[bool], pressure: &[T], spent: &[(usize, T)], cost: T) {
            if self.goal.iter().all(|&g| active[g]) {
                let better = match &self.best {
                    None => true,
                    Some((b, _)) => cost < *b,
                };
                if better {
                    self.best = Some((cost, spent.to_vec()));
                }
                return;
            }
            if let Some((b, _)) = &self.best {
                if cost >= *b {
                    return;
                }
            }
            for i in 0..self.c.ids.len() {
                if active[i] || !self.c.lambda[i].is_positive() {
                    continue;
                }
                let price =
                    (self.c.theta[i].clone() - pressure[i].clone()) / self.c.lambda[i].clone();
                let mut seed: BTreeSet<usize> =
                    active.iter().enumerate().filter(|(_, a)| **a).map(|(j, _)| j).collect();
                seed.insert(i);
                let (next_active, next_pressure) = self.c.closure(&seed, &BTreeSet::new());
                let mut next_spent = spent.to_vec();
                next_spent.push((i, price.clone()));
                self.run(&next_active, &next_pressure, &next_spent, cost.clone() + price);
            }
        }
    }

    let mut dfs = Dfs { c: &c, goal: &goal, best: None };
    dfs.run(&act0, &p0, &[], T::zero());
    Ok(match dfs.best {
        None => PromotionResult::Infeasible,
        Some((min_budget, spent)) => {
            let witness = SpendingFunction::new(
                spent.into_iter().map(|(i, price)| (c.ids[i].clone(), price)),
            )
            .expect("prices are positive");
            PromotionResult::Feasible { min_budget, witness }
        }
    })
}

/// Brute-force blocking: for every clamp set of negative-propensity
/// non-seed agents, realises the interdiction through the public diffusion
/// semantics — first with overwhelming spends to find the blocked
/// fixpoint, then probing the breakpoint spends exactly and just above
/// them to classify the bound as attained or strict. Guarded to small
/// negative-propensity counts; must agree with [`min_blocking_budget`].
pub fn oracle_blocking<T: Scalar>(
    net: &SocialNetwork<T>,
    from: &AgentSet,
    to: &AgentSet,
) -> Result<BlockingResult<T>, SolverError> {
    let negatives: Vec<AgentId> =
        net.agents().iter().filter(|a| net.propensity_of(a).is_negative()).cloned().collect();
    if negatives.len() > ORACLE_BLOCKING_LIMIT {
        return Err(SolverError::TooLarge {
            what: "oracle_blocking",
            limit: ORACLE_BLOCKING_LIMIT,
            actual: negatives.len(),
        });
    }
    check_sets(net, &[from, to])?;
    let clampable: Vec<AgentId> = negatives.into_iter().filter(|a| !from.contains(a)).collect();

    let one = T::one();
    let mut best: Option<(T, bool, AgentSet)> = None;

    for mask in 0u32..(1u32 << clampable.len()) {
        let clamp: Vec<AgentId> = clampable
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect();

        // Overwhelming spends realise "held out" behaviourally.
        let huge = SpendingFunction::new(clamp.iter().map(|d| {
            let total_in: T = net.agents().iter().fold(T::zero(), |acc, a| acc + net.weight(a, d));
            let spend =
                (total_in + net.threshold_of(d).abs() + one.clone()) / net.propensity_of(d).abs();
            (d.clone(), spend)
        }))
        .expect("positive spends");
        let blocked_fix = net.diffuse_fixpoint(from, &huge)?.fixpoint().clone();
        if to.is_subset(&blocked_fix) {
            continue;
        }

        // Breakpoint spends: the exact per-agent bound at the blocked
        // fixpoint's pressures.
        let breakpoints: BTreeMap<AgentId, T> = clamp
            .iter()
            .map(|d| {
                let pressure = blocked_fix.iter().fold(T::zero(), |acc, a| acc + net.weight(a, d));
                let slack = pressure - net.threshold_of(d).clone();
                let bp = if slack.is_negative() {
                    T::zero()
                } else {
                    slack / net.propensity_of(d).abs()
                };
                (d.clone(), bp)
            })
            .collect();
        let total: T = breakpoints.values().fold(T::zero(), |acc, v| acc + v.clone());

        // Probe the breakpoints exactly: does the infimum itself block?
        let at_bp = SpendingFunction::new(breakpoints.clone()).expect("non-negative");
        let attained = !to.is_subset(net.diffuse_fixpoint(from, &at_bp)?.fixpoint());

        // Probe just above the breakpoints: the margin stays below every
        // pressure gap a clamped agent could face, so the run must land on
        // the blocked fixpoint; skip the clamp set if it does not.
        let margin = probe_margin(net, &clamp, &breakpoints);
        let above = SpendingFunction::new(
            breakpoints.iter().map(|(d, bp)| (d.clone(), bp.clone() + margin.clone())),
        )
        .expect("positive");
        if *net.diffuse_fixpoint(from, &above)?.fixpoint() != blocked_fix {
            continue;
        }

        best = match best {
            None => Some((total, attained, clamp.into_iter().collect())),
            Some((b, att, w)) => {
                if total < b {
                    Some((total, attained, clamp.into_iter().collect()))
                } else if total == b {
                    Some((b, att || attained, w))
                } else {
                    Some((b, att, w))
                }
            }
        };
    }

    Ok(match best {
        None => BlockingResult::Unblockable,
        Some((infimum, attained, witness_set)) => {
            BlockingResult::Blockable { infimum, attained, witness_set }
        }
    })
}

/// Half the smallest positive gap between a clamped agent's breakpoint and
/// any higher spend requirement it could meet (over subset sums of its
/// incoming weights); 1 when no such gap exists or in-degrees are large.
fn probe_margin<T: Scalar>(
    net: &SocialNetwork<T>,
    clamp: &[AgentId],
    breakpoints: &BTreeMap<AgentId, T>,
) -> T {
    let mut margin: Option<T> = None;
    let two = T::from_u8(2).expect("small constant");
    for d in clamp {
        let in_weights: Vec<T> =
            net.agents().iter().map(|a| net.weight(a, d)).filter(|w| !w.is_zero()).collect();
        if in_weights.len() > 16 {
            continue;
        }
        let mut sums: Vec<T> = vec![T::zero()];
        for w in &in_weights {
            let mut extended: Vec<T> = sums.iter().map(|s| s.clone() + w.clone()).collect();
            sums.append(&mut extended);
        }
        for s in sums {
            let requirement = (s - net.threshold_of(d).clone()) / net.propensity_of(d).abs();
            let gap = requirement - breakpoints[d].clone();
            if gap.is_positive() {
                let half = gap / two.clone();
                if margin.as_ref().is_none_or(|m| half < *m) {
                    margin = Some(half);
                }
            }
        }
    }
    margin.unwrap_or_else(T::one)
}
