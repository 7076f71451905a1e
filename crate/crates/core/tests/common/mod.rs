//! Shared fixtures and seeded random generators for the integration
//! suites. Everything is exact `Ratio<i64>` arithmetic with small
//! denominators, which keeps word-sized rationals far from overflow.

#![allow(dead_code)]

use std::collections::BTreeMap;

use influence_core::{
    AgentId, AgentSet, AtomicStatement, HypothesisSet, Rat64, SocialNetwork, SpendingFunction,
};
use num_rational::Ratio;
use num_traits::Signed;
use rand::Rng;

pub type Net = SocialNetwork<Rat64>;

pub fn q(n: i64) -> Rat64 {
    Ratio::from_integer(n)
}

pub fn qr(n: i64, d: i64) -> Rat64 {
    Ratio::new(n, d)
}

pub fn set(ids: &[&str]) -> AgentSet {
    ids.iter().map(|s| s.to_string()).collect()
}

/// agents {x, y, z}; w(x,y) = w(y,z) = 1; lambda(y) = -1, others 0; theta 1.
pub fn net1() -> Net {
    SocialNetwork::new(
        ["x".into(), "y".into(), "z".into()],
        [(("x".into(), "y".into()), q(1)), (("y".into(), "z".into()), q(1))],
        [("x".into(), q(0)), ("y".into(), q(-1)), ("z".into(), q(0))].into(),
        [("x".into(), q(1)), ("y".into(), q(1)), ("z".into(), q(1))].into(),
    )
    .unwrap()
}

/// agents {u, v}; w(u,v)=2; lambda(u)=2, lambda(v)=0; theta(u)=4, theta(v)=2.
pub fn net2() -> Net {
    SocialNetwork::new(
        ["u".into(), "v".into()],
        [(("u".into(), "v".into()), q(2))],
        [("u".into(), q(2)), ("v".into(), q(0))].into(),
        [("u".into(), q(4)), ("v".into(), q(2))].into(),
    )
    .unwrap()
}

/// {a,c |>1 d ; b,c |>2 a ; a,b |>3 c} over {a, b, c, d}.
pub fn x_fig3() -> HypothesisSet<Rat64> {
    HypothesisSet::new(
        set(&["a", "b", "c", "d"]),
        vec![
            AtomicStatement::new(set(&["a", "c"]), q(1), set(&["d"])).unwrap(),
            AtomicStatement::new(set(&["b", "c"]), q(2), set(&["a"])).unwrap(),
            AtomicStatement::new(set(&["a", "b"]), q(3), set(&["c"])).unwrap(),
        ],
    )
    .unwrap()
}

/// Uniform small rational: numerator in the given range, denominator 1..=4.
pub fn rand_rat(rng: &mut impl Rng, num_lo: i64, num_hi: i64) -> Rat64 {
    Ratio::new(rng.gen_range(num_lo..=num_hi), rng.gen_range(1..=4))
}

/// Random network with up to `max_agents` agents and at most
/// `max_negative` negative-propensity agents. Weights are sparse
/// non-negative rationals; thresholds may be non-positive; propensities
/// span both signs.
pub fn random_network(rng: &mut impl Rng, max_agents: usize, max_negative: usize) -> Net {
    let n = rng.gen_range(1..=max_agents);
    let agents: Vec<AgentId> = (0..n).map(|i| format!("v{i}")).collect();
    let mut weights = Vec::new();
    for from in &agents {
        for to in &agents {
            let p: f64 = rng.gen();
            let keep = if from == to { p < 0.05 } else { p < 0.35 };
            if keep {
                weights.push(((from.clone(), to.clone()), rand_rat(rng, 1, 4)));
            }
        }
    }
    let mut negatives = 0usize;
    let propensity: BTreeMap<AgentId, Rat64> = agents
        .iter()
        .map(|a| {
            let mut lambda = rand_rat(rng, -2, 2);
            if lambda.is_negative() {
                if negatives < max_negative {
                    negatives += 1;
                } else {
                    lambda = -lambda;
                }
            }
            (a.clone(), lambda)
        })
        .collect();
    let threshold: BTreeMap<AgentId, Rat64> =
        agents.iter().map(|a| (a.clone(), rand_rat(rng, -1, 4))).collect();
    SocialNetwork::new(agents, weights, propensity, threshold).unwrap()
}

/// Random subset of the network's agents.
pub fn random_subset(rng: &mut impl Rng, net: &Net) -> AgentSet {
    net.agents().iter().filter(|_| rng.gen_bool(0.4)).cloned().collect()
}

/// Random sparse campaign over the network's agents.
pub fn random_spending(rng: &mut impl Rng, net: &Net) -> SpendingFunction<Rat64> {
    let picks: Vec<AgentId> = net.agents().iter().filter(|_| rng.gen_bool(0.35)).cloned().collect();
    SpendingFunction::new(picks.into_iter().map(|a| {
        let amount = rand_rat(rng, 0, 3);
        (a, amount)
    }))
    .unwrap()
}

/// The budget grid used by the soundness and completeness suites.
pub fn budget_grid() -> Vec<Rat64> {
    vec![q(0), qr(1, 2), q(1), q(2), q(3)]
}

/// Random atomic hypothesis set: universe of up to `max_universe` agents,
/// up to `max_hypotheses` hypotheses with budgets from the grid.
pub fn random_hypotheses(
    rng: &mut impl Rng,
    max_universe: usize,
    max_hypotheses: usize,
) -> HypothesisSet<Rat64> {
    let n = rng.gen_range(1..=max_universe);
    let universe: AgentSet = (0..n).map(|i| format!("{}", (b'a' + i as u8) as char)).collect();
    let grid = budget_grid();
    let count = rng.gen_range(0..=max_hypotheses);
    let hypotheses = (0..count)
        .map(|_| {
            let left: AgentSet = universe.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
            let right: AgentSet = universe.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
            let budget = grid[rng.gen_range(0..grid.len())];
            AtomicStatement::new(left, budget, right).unwrap()
        })
        .collect();
    HypothesisSet::new(universe, hypotheses).unwrap()
}

/// Iterates every subset of `universe` (small universes only).
pub fn subsets(universe: &AgentSet) -> Vec<AgentSet> {
    let items: Vec<&AgentId> = universe.iter().collect();
    (0u32..(1 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, a)| (*a).clone())
                .collect()
        })
        .collect()
}
