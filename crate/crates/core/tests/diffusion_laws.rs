//! Algebraic laws of the diffusion operator on random networks: the chain
//! is inflationary and stabilizes quickly, fixpoints are idempotent and
//! monotone in the seed, unions combine, and campaign composition via the
//! receptive merge dominates sequential campaigns.

mod common;

use common::*;
use influence_core::{AgentSet, SpendingFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CASES: usize = 150;

#[test]
fn diffusion_law_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eedd1f5);
    for _ in 0..CASES {
        let net = random_network(&mut rng, 8, 8);
        let seed_a = random_subset(&mut rng, &net);
        let seed_b = random_subset(&mut rng, &net);
        let s1 = random_spending(&mut rng, &net);
        let s2 = random_spending(&mut rng, &net);

        // Inflationary: seed ⊆ one step ⊆ fixpoint; stabilization bound.
        let step = net.diffuse_step(&seed_a, &s1).unwrap();
        let trace = net.diffuse_fixpoint(&seed_a, &s1).unwrap();
        assert!(seed_a.is_subset(&step));
        assert!(step.is_subset(trace.fixpoint()));
        assert!(trace.steps().len() <= net.agents().len() + 2);
        for pair in trace.steps().windows(2) {
            assert!(pair[0].is_subset(&pair[1]));
        }
        let last_two = &trace.steps()[trace.steps().len() - 2..];
        assert_eq!(last_two[0], last_two[1]);

        // Composition: n steps then k steps equals n + k steps.
        let n = trace.steps().len() % 3;
        let k = 1 + trace.steps().len() % 2;
        let after_n = iterate(&net, &seed_a, &s1, n);
        let after_nk = iterate(&net, &after_n, &s1, k);
        assert_eq!(after_nk, iterate(&net, &seed_a, &s1, n + k));

        // Idempotence: diffusing again from the fixpoint stays put.
        let again = net.diffuse_fixpoint(trace.fixpoint(), &s1).unwrap();
        assert_eq!(again.fixpoint(), trace.fixpoint());

        // Seed monotonicity and union.
        let mut union_seed: AgentSet = seed_a.clone();
        union_seed.extend(seed_b.iter().cloned());
        let fix_a = trace.fixpoint();
        let fix_b = net.diffuse_fixpoint(&seed_b, &s1).unwrap();
        let fix_union = net.diffuse_fixpoint(&union_seed, &s1).unwrap();
        assert!(fix_a.is_subset(fix_union.fixpoint()));
        assert!(fix_b.fixpoint().is_subset(fix_union.fixpoint()));

        // Receptive merge: propensity-weighted pointwise bound.
        let merged = net.merge_campaigns(&s1, &s2).unwrap();
        for agent in net.agents() {
            let lambda = net.propensity_of(agent);
            assert!(*lambda * s1.get(agent) <= *lambda * merged.get(agent));
        }

        // Spend monotonicity: every round under s1 is inside the round
        // under the merged campaign.
        let mut a1 = seed_a.clone();
        let mut a2 = seed_a.clone();
        for _ in 0..net.agents().len() + 1 {
            assert!(a1.is_subset(&a2));
            a1 = net.diffuse_step(&a1, &s1).unwrap();
            a2 = net.diffuse_step(&a2, &merged).unwrap();
        }

        // Sequential campaigns are dominated by the merged one.
        let first = net.diffuse_fixpoint(&seed_a, &s1).unwrap();
        let second = net.diffuse_fixpoint(first.fixpoint(), &s2).unwrap();
        let combined = net.diffuse_fixpoint(&seed_a, &merged).unwrap();
        assert!(second.fixpoint().is_subset(combined.fixpoint()));
    }
}

fn iterate(
    net: &Net,
    seed: &AgentSet,
    s: &SpendingFunction<influence_core::Rat64>,
    rounds: usize,
) -> AgentSet {
    let mut current = seed.clone();
    for _ in 0..rounds {
        current = net.diffuse_step(&current, s).unwrap();
    }
    current
}
