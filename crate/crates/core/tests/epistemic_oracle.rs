mod oracle;

use std::collections::BTreeSet;

use lextype_core::fixtures::example1;
use lextype_core::harness::{gen_structure, GenParams};
use lextype_core::{
    cautious_belief_operator, cautiously_believes, marginal_lps, rcbr_iterate, Event, JointEvent,
    Lps, Measure, OppState, TypeStructure,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn to_joint(ground: &[OppState], event: &[bool]) -> JointEvent {
    ground
        .iter()
        .zip(event)
        .filter(|(_, &inside)| inside)
        .map(|(g, _)| g.clone())
        .collect()
}

fn pairs(event: &Event) -> oracle::Pairs {
    event.pairs.clone()
}

fn small_corpus() -> Vec<TypeStructure> {
    oracle::corpus(500)
        .into_iter()
        .flat_map(|(_, a, b)| [a, b])
        .filter(|s| s.state_count() <= 6)
        .collect()
}

#[test]
fn trace_matches_brute_force_on_small_corpus() {
    let small = small_corpus();
    assert!(
        small.len() >= 100,
        "corpus has only {} small structures",
        small.len()
    );
    for s in &small {
        let trace = rcbr_iterate(s);
        let last = trace.stabilized_at() + 2;
        let expected = oracle::rcbr_levels(s, last);
        for (m, level) in expected.iter().enumerate() {
            for (i, want) in level.iter().enumerate() {
                assert_eq!(&pairs(trace.event(m, i)), want, "level {m}, player {i}");
            }
        }
    }
}

#[test]
fn least_level_matches_on_every_subset() {
    for s in small_corpus().iter().take(60) {
        for i in 0..s.num_players() {
            let ground = oracle::ground(s, i);
            for t in 0..s.num_types(i) {
                let masses = oracle::dense_belief(s, i, t, &ground);
                for event in oracle::subsets(ground.len()).skip(1) {
                    let joint = to_joint(&ground, &event);
                    let got = cautiously_believes(s.belief(i, t), &joint).unwrap();
                    assert_eq!(got, oracle::least_level(&masses, &ground, &event));
                }
            }
        }
    }
}

#[test]
fn example1_traces_match_brute_force() {
    let (t, tc) = example1();
    for s in [&t, &tc] {
        let trace = rcbr_iterate(s);
        let expected = oracle::rcbr_levels(s, 4);
        for (m, level) in expected.iter().enumerate() {
            for (i, want) in level.iter().enumerate() {
                assert_eq!(&pairs(trace.event(m, i)), want);
            }
        }
    }
}

#[test]
fn levels_decrease_and_stabilize_in_bound() {
    for (_, a, b) in oracle::corpus(300) {
        for s in [&a, &b] {
            let trace = rcbr_iterate(s);
            assert!(trace.stabilized_at() <= s.state_count() + 1);
            for m in 0..=trace.stabilized_at() + 1 {
                for i in 0..s.num_players() {
                    assert!(trace.event(m + 1, i).is_subset(trace.event(m, i)));
                }
            }
            let k = trace.stabilized_at();
            assert_eq!(trace.level(k), trace.level(k + 1));
        }
    }
}

#[test]
fn non_monotonicity_witness() {
    let (t, _) = example1();
    let first_level = Lps::single(t.belief(0, 0).level(0).clone());
    let s = t
        .with_types(
            vec![t.type_names(0).to_vec(), t.type_names(1).to_vec()],
            vec![vec![first_level], t.beliefs(1).to_vec()],
        )
        .unwrap();
    let e: JointEvent = [OppState::new(vec![0], vec![0])].into();
    let f: JointEvent = s.opponent_states(0).into_iter().collect();
    assert!(e.is_subset(&f));
    let be = cautious_belief_operator(&s, 0, &e);
    let bf = cautious_belief_operator(&s, 0, &f);
    assert!(be.contains(0, 0));
    assert!(!bf.contains(0, 0));
}

fn random_structure(seed: u64) -> TypeStructure {
    gen_structure(&GenParams {
        seed,
        players: 2 + (seed % 2) as usize,
        ..GenParams::default()
    })
    .unwrap()
}

// A random nonempty E and a superset F with the same strategy projection.
fn nested_pair<R: Rng>(rng: &mut R, ground: &[OppState]) -> (JointEvent, JointEvent) {
    let k = rng.gen_range(1..=ground.len());
    let e: JointEvent = ground.choose_multiple(rng, k).cloned().collect();
    let strategies: BTreeSet<&Vec<usize>> = e.iter().map(|g| &g.strategies).collect();
    let mut f = e.clone();
    for g in ground {
        if strategies.contains(&g.strategies) && rng.gen_bool(0.5) {
            f.insert(g.clone());
        }
    }
    (e, f)
}

proptest! {
    #[test]
    fn projection_monotonicity(seed in 0u64..10_000, draw in any::<u64>()) {
        let s = random_structure(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(draw);
        let i = rng.gen_range(0..s.num_players());
        let (e, f) = nested_pair(&mut rng, &s.opponent_states(i));
        let be = cautious_belief_operator(&s, i, &e);
        let bf = cautious_belief_operator(&s, i, &f);
        prop_assert!(be.is_subset(&bf));
    }

    #[test]
    fn belief_is_independent_of_own_strategy(seed in 0u64..10_000, draw in any::<u64>()) {
        let s = random_structure(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(draw);
        let i = rng.gen_range(0..s.num_players());
        let ground = s.opponent_states(i);
        let k = rng.gen_range(1..=ground.len());
        let e: JointEvent = ground.choose_multiple(&mut rng, k).cloned().collect();
        let b = cautious_belief_operator(&s, i, &e);
        for t in 0..s.num_types(i) {
            let row: Vec<bool> = (0..s.game().num_strategies(i)).map(|x| b.contains(x, t)).collect();
            prop_assert!(row.iter().all(|&x| x == row[0]));
        }
    }

    #[test]
    fn support_identity(seed in 0u64..10_000, draw in any::<u64>()) {
        let s = random_structure(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(draw);
        let i = rng.gen_range(0..s.num_players());
        let t = rng.gen_range(0..s.num_types(i));
        let belief = s.belief(i, t);
        // The support up to a random level plus random extra states; only
        // believed draws are checked.
        let upto = rng.gen_range(1..=belief.len());
        let mut e: JointEvent = belief.levels()[..upto]
            .iter()
            .flat_map(|m| m.support().cloned())
            .collect();
        for g in s.opponent_states(i) {
            if rng.gen_bool(0.3) {
                e.insert(g);
            }
        }
        if let Some(k) = cautiously_believes(belief, &e).unwrap() {
            let marginal = marginal_lps(belief);
            let covered: BTreeSet<Vec<usize>> = marginal.levels()[..k]
                .iter()
                .flat_map(|m: &Measure<Vec<usize>>| m.support().cloned())
                .collect();
            let projected: BTreeSet<Vec<usize>> = e.iter().map(|g| g.strategies.clone()).collect();
            prop_assert_eq!(projected, covered);
        }
    }
}
