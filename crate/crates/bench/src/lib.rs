//! Input generators shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random walk, the usual shape of price-like series.
pub fn random_walk(n: usize, seed: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut level = 0i64;
    (0..n)
        .map(|_| {
            level += rng.random_range(-10..=10);
            level
        })
        .collect()
}

/// Uniform values from a small alphabet; equal values are frequent.
pub fn uniform(n: usize, alphabet: i64, seed: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(1..=alphabet)).collect()
}

/// Strictly increasing text and an increasing-then-drop pattern of length
/// `m`: every alignment runs to the last pattern value and falls back.
pub fn worst_case(n: usize, m: usize) -> (Vec<i64>, Vec<i64>) {
    let text = (1..=n as i64).collect();
    let mut pattern: Vec<i64> = (1..m as i64).collect();
    pattern.push(0);
    (text, pattern)
}

/// `count` random-walk patterns with lengths in `min_len..=max_len`.
pub fn patterns(count: usize, min_len: usize, max_len: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let len = rng.random_range(min_len..=max_len);
            random_walk(len, seed.wrapping_add(i as u64 + 1))
        })
        .collect()
}
