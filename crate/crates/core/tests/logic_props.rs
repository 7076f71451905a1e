//! Properties of the syntactic side: closure monotonicity and idempotence,
//! budget monotonicity of minimal derivations, and certificate soundness —
//! every decision the closures make is backed by an emitted derivation the
//! checker accepts.

mod common;

use common::*;
use influence_core::{
    check_derivation, decide_derivable, derive_atomic, min_derivation_budget, preventive_closure,
    SemanticsMode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn preventive_closure_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc105e);
    let grid = budget_grid();
    for _ in 0..120 {
        let x = random_hypotheses(&mut rng, 4, 3);
        let a = x
            .universe()
            .iter()
            .filter(|_| rng.gen_bool(0.4))
            .cloned()
            .collect::<influence_core::AgentSet>();
        let p = grid[rng.gen_range(0..grid.len())];
        let q_level = grid[rng.gen_range(0..grid.len())];

        let at_p = preventive_closure(&x, &a, &p).unwrap();
        assert!(a.is_subset(&at_p));

        // Raising the level can only shrink the closure.
        if p <= q_level {
            let at_q = preventive_closure(&x, &a, &q_level).unwrap();
            assert!(at_q.is_subset(&at_p));
        }

        // Idempotence.
        let again = preventive_closure(&x, &at_p, &p).unwrap();
        assert_eq!(again, at_p);
    }
}

#[test]
fn promotional_minimum_is_monotone_in_the_seed() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eedb1a5);
    for _ in 0..120 {
        let x = random_hypotheses(&mut rng, 4, 3);
        let a: influence_core::AgentSet =
            x.universe().iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
        let bigger: influence_core::AgentSet = a
            .union(&x.universe().iter().filter(|_| rng.gen_bool(0.3)).cloned().collect())
            .cloned()
            .collect();
        let b: influence_core::AgentSet =
            x.universe().iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
        let from_small = min_derivation_budget(&x, &a, &b).unwrap();
        let from_large = min_derivation_budget(&x, &bigger, &b).unwrap();
        match (from_small, from_large) {
            (Some(small), Some(large)) => assert!(large <= small),
            (Some(_), None) => panic!("larger seed lost derivability"),
            _ => {}
        }
    }
}

#[test]
fn closure_memberships_are_certified() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xce47);
    let grid = budget_grid();
    for _ in 0..60 {
        let x = random_hypotheses(&mut rng, 4, 3);
        let a: influence_core::AgentSet =
            x.universe().iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
        let p = grid[rng.gen_range(0..grid.len())];

        // Preventive: each member of the closure has an accepted proof at
        // the level, and the whole closure does too.
        let closure = preventive_closure(&x, &a, &p).unwrap();
        for agent in &closure {
            let target = set(&[agent.as_str()]);
            let proof = derive_atomic(SemanticsMode::Preventive, &x, &a, &target, &p)
                .unwrap()
                .expect("member must be derivable");
            check_derivation(&proof, &x).unwrap();
        }
        let proof = derive_atomic(SemanticsMode::Preventive, &x, &a, &closure, &p)
            .unwrap()
            .expect("closure derivable as a set");
        check_derivation(&proof, &x).unwrap();

        // Promotional: the minimal budget itself is witnessed.
        let b: influence_core::AgentSet =
            x.universe().iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
        if let Some(min) = min_derivation_budget(&x, &a, &b).unwrap() {
            let proof = derive_atomic(SemanticsMode::Promotional, &x, &a, &b, &min)
                .unwrap()
                .expect("derivable at its own minimum");
            check_derivation(&proof, &x).unwrap();
            let last = proof.lines.last().unwrap();
            assert_eq!(
                last.formula,
                influence_core::Formula::Atom { left: a.clone(), budget: min, right: b.clone() }
            );
        }
    }
}

#[test]
fn decide_derivable_matches_the_emitters() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0d37);
    let grid = budget_grid();
    for _ in 0..60 {
        let x = random_hypotheses(&mut rng, 4, 3);
        let a: influence_core::AgentSet =
            x.universe().iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
        let b: influence_core::AgentSet =
            x.universe().iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
        let p = grid[rng.gen_range(0..grid.len())];
        for system in [SemanticsMode::Promotional, SemanticsMode::Preventive] {
            let decided = decide_derivable(system, &x, &a, &b, &p).unwrap();
            let emitted = derive_atomic(system, &x, &a, &b, &p).unwrap();
            assert_eq!(decided, emitted.is_some());
            if let Some(proof) = emitted {
                check_derivation(&proof, &x).unwrap();
            }
        }
    }
}

#[test]
fn fixture_decisions() {
    let x = x_fig3();
    assert_eq!(min_derivation_budget(&x, &set(&["b", "c"]), &set(&["d"])).unwrap(), Some(q(3)));
    assert_eq!(preventive_closure(&x, &set(&["b", "c"]), &q(2)).unwrap(), set(&["a", "b", "c"]));
    assert!(decide_derivable(
        SemanticsMode::Preventive,
        &x,
        &set(&["b", "c"]),
        &set(&["d"]),
        &q(1)
    )
    .unwrap());
}
