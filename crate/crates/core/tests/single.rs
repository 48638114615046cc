use itertools::Itertools;
use ordmatch::oracle::{
    generate, naive_failure, naive_failure_windowed, naive_search, naive_search_windowed,
    GeneratorConfig,
};
use ordmatch::single::build_failure_nn_with;
use ordmatch::{
    build_failure_nn, build_failure_prefix, build_failure_prefix_windowed, natural_rep, nn_rep,
    prefix_rep, search_nn, search_nn_with, search_prefix, search_prefix_with, search_windowed,
    windowed_prefix_rep, OpCounters, ScanEvent, SinglePatternIndex, Trace,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config(seed: u64) -> GeneratorConfig {
    GeneratorConfig {
        text_len_max: 50,
        pattern_len_max: 8,
        value_range: 1..=10,
        pattern_count_max: 1,
        seed,
    }
}

#[test]
fn scanners_agree_with_naive_search() {
    for inst in generate(config(101)).unwrap().take(2_000) {
        let pattern = &inst.patterns[0];
        let idx = SinglePatternIndex::new(pattern.clone()).unwrap();
        let expected = naive_search(&inst.text, pattern);
        assert_eq!(search_prefix(&inst.text, &idx), expected, "{inst:?}");
        assert_eq!(search_nn(&inst.text, &idx), expected, "{inst:?}");
    }
}

#[test]
fn failure_constructions_agree_on_small_permutations() {
    for m in 1..=6 {
        for p in (1..=m as i64).permutations(m) {
            let naive = naive_failure(&p);
            assert_eq!(
                build_failure_prefix(&p, &prefix_rep(&p))
                    .unwrap()
                    .as_slice(),
                naive
            );
            assert_eq!(build_failure_nn(&p, &nn_rep(&p)).unwrap().as_slice(), naive);
        }
    }
}

#[test]
fn failure_constructions_agree_on_random_longer_patterns() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1_000 {
        let m = rng.random_range(9..=24);
        let hi = rng.random_range(2..=30);
        let p: Vec<i64> = (0..m).map(|_| rng.random_range(1..=hi)).collect();
        let naive = naive_failure(&p);
        assert_eq!(
            build_failure_prefix(&p, &prefix_rep(&p))
                .unwrap()
                .as_slice(),
            naive
        );
        assert_eq!(build_failure_nn(&p, &nn_rep(&p)).unwrap().as_slice(), naive);
    }
}

#[test]
fn failure_function_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..300 {
        let m = rng.random_range(1..=12);
        let p: Vec<i64> = (0..m).map(|_| rng.random_range(1..=6)).collect();
        let pi = build_failure_nn(&p, &nn_rep(&p)).unwrap();
        assert_eq!(pi.at(1), 0);
        for q in 1..=m {
            let k = pi.at(q);
            assert!(k < q);
            if k > 0 {
                assert_eq!(natural_rep(&p[..k]), natural_rep(&p[q - k..q]));
            }
            for longer in k + 1..q {
                assert_ne!(natural_rep(&p[..longer]), natural_rep(&p[q - longer..q]));
            }
        }
    }
}

#[test]
fn nn_failure_uses_linear_comparisons() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let m = rng.random_range(1..=200);
        let p: Vec<i64> = (0..m).map(|_| rng.random_range(1..=5)).collect();
        let mut counters = OpCounters::new();
        build_failure_nn_with(&p, &nn_rep(&p), &mut counters).unwrap();
        assert!(counters.comparisons <= 4 * m as u64);
        assert_eq!(counters.tree_inserts, 0);
    }
}

#[test]
fn fallbacks_never_skip_a_match() {
    for inst in generate(GeneratorConfig {
        text_len_max: 25,
        pattern_len_max: 6,
        ..config(202)
    })
    .unwrap()
    .take(1_000)
    {
        let pattern = &inst.patterns[0];
        let idx = SinglePatternIndex::new(pattern.clone()).unwrap();
        let starts: Vec<usize> = naive_search(&inst.text, pattern)
            .iter()
            .map(|m| m.start)
            .collect();
        let mut trace = Trace::default();
        search_prefix_with(&inst.text, &idx, &mut trace);
        for event in &trace.events {
            if let ScanEvent::Failure {
                position, from, to, ..
            } = *event
            {
                // window starts strictly between position-from and position-to
                for s in position - from + 1..position - to {
                    assert!(!starts.contains(&s), "skipped match at {s} in {inst:?}");
                }
            }
        }
    }
}

#[test]
fn scan_budgets() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let n = rng.random_range(0..=300);
        let m = rng.random_range(1..=10);
        let text: Vec<i64> = (0..n).map(|_| rng.random_range(1..=4)).collect();
        let pattern: Vec<i64> = (0..m).map(|_| rng.random_range(1..=4)).collect();
        let idx = SinglePatternIndex::new(pattern).unwrap();

        let mut c = OpCounters::new();
        search_nn_with(&text, &idx, &mut c);
        assert!(c.comparisons <= 4 * n as u64);

        let mut c = OpCounters::new();
        search_prefix_with(&text, &idx, &mut c);
        if m <= n {
            assert_eq!(c.tree_inserts, n as u64);
        }
        assert!(c.tree_deletes <= n as u64);
        assert!(c.rank_queries <= 2 * n as u64);
    }
}

#[test]
fn windowed_search_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for inst in generate(config(303)).unwrap().take(1_000) {
        let pattern = &inst.patterns[0];
        let k = rng.random_range(1..=pattern.len() + 1);
        let idx = SinglePatternIndex::windowed(pattern.clone(), k).unwrap();
        let expected = naive_search_windowed(&inst.text, pattern, k);
        assert_eq!(
            search_windowed(&inst.text, &idx, k).unwrap(),
            expected,
            "{inst:?} k={k}"
        );
        assert_eq!(search_nn(&inst.text, &idx), expected, "{inst:?} k={k}");

        let mu = windowed_prefix_rep(pattern, k).unwrap();
        assert_eq!(
            build_failure_prefix_windowed(pattern, &mu, k)
                .unwrap()
                .as_slice(),
            naive_failure_windowed(pattern, k)
        );
        assert_eq!(idx.failure().as_slice(), naive_failure_windowed(pattern, k));
    }
}

#[test]
fn stock_trend_pattern_with_unit_window() {
    // ten drops then five rises
    let pattern: Vec<i64> = (0..=10).rev().chain(1..=5).collect();
    assert_eq!(pattern.len(), 16);
    let idx = SinglePatternIndex::windowed(pattern, 1).unwrap();

    // noise that never contains ten consecutive drops, then the run
    let mut text: Vec<i64> = vec![50, 52, 51, 53, 49, 48, 55, 54, 56, 57];
    let run_start = text.len() + 1;
    text.extend((0..=10).map(|d| 200 - 7 * d));
    text.extend((1..=5).map(|u| 130 + 3 * u));
    text.extend([100, 120, 110, 115]);

    let found = search_windowed(&text, &idx, 1).unwrap();
    assert_eq!(found.len(), 1);
    assert_eq!(found[0].start, run_start);
}

proptest! {
    #[test]
    fn prefix_and_nn_agree(
        text in prop::collection::vec(0i64..5, 0..60),
        pattern in prop::collection::vec(0i64..5, 1..7),
    ) {
        let idx = SinglePatternIndex::new(pattern.clone()).unwrap();
        let expected = naive_search(&text, &pattern);
        prop_assert_eq!(search_prefix(&text, &idx), expected.clone());
        prop_assert_eq!(search_nn(&text, &idx), expected);
    }

    #[test]
    fn large_window_equals_plain_search(
        text in prop::collection::vec(0i64..6, 0..60),
        pattern in prop::collection::vec(0i64..6, 1..7),
        extra in 0usize..3,
    ) {
        let k = pattern.len().saturating_sub(1).max(1) + extra;
        let plain = SinglePatternIndex::new(pattern.clone()).unwrap();
        let windowed = SinglePatternIndex::windowed(pattern, k).unwrap();
        prop_assert_eq!(search_windowed(&text, &windowed, k).unwrap(), search_prefix(&text, &plain));
    }
}
