//! Helpers for the acceptance suite: seeded exact-rational generators
//! (mirroring the core integration suites) and binary invocation.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;

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

pub fn rand_rat(rng: &mut impl Rng, num_lo: i64, num_hi: i64) -> Rat64 {
    Ratio::new(rng.gen_range(num_lo..=num_hi), rng.gen_range(1..=4))
}

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

pub fn random_subset(rng: &mut impl Rng, net: &Net) -> AgentSet {
    net.agents().iter().filter(|_| rng.gen_bool(0.4)).cloned().collect()
}

pub fn random_spending(rng: &mut impl Rng, net: &Net) -> SpendingFunction<Rat64> {
    let picks: Vec<AgentId> = net.agents().iter().filter(|_| rng.gen_bool(0.35)).cloned().collect();
    SpendingFunction::new(picks.into_iter().map(|a| {
        let amount = rand_rat(rng, 0, 3);
        (a, amount)
    }))
    .unwrap()
}

pub fn budget_grid() -> Vec<Rat64> {
    vec![q(0), qr(1, 2), q(1), q(2), q(3)]
}

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

/// Path into `tests/golden/`.
pub fn golden(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(rel)
}

/// Runs the `influence` binary; returns (stdout, stderr, exit code).
pub fn influence(args: &[&str]) -> (String, String, i32) {
    let output =
        Command::new(env!("CARGO_BIN_EXE_influence")).args(args).output().expect("binary runs");
    (
        String::from_utf8_lossy(&output.stdout).into_owned(),
        String::from_utf8_lossy(&output.stderr).into_owned(),
        output.status.code().unwrap_or(-1),
    )
}
