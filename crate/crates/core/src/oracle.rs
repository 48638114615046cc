//! Brute-force references and random instances.
//!
//! Nothing here uses the order-statistic tree: ranks are recomputed from
//! scratch by sorting or counting, so the fast paths can be checked against
//! an independent route. Costs are quadratic or worse; keep inputs small.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::multi::OutputMode;
use crate::representations::natural_rep;
use crate::MatchReport;

/// Every start `s` with `natural_rep(T[s..s+m-1]) == natural_rep(P)`.
pub fn naive_search<T: Ord>(text: &[T], pattern: &[T]) -> Vec<MatchReport> {
    naive_search_as(text, pattern, 0)
}

fn naive_search_as<T: Ord>(text: &[T], pattern: &[T], id: usize) -> Vec<MatchReport> {
    let m = pattern.len();
    if m == 0 || m > text.len() {
        return Vec::new();
    }
    let target = natural_rep(pattern);
    text.windows(m)
        .enumerate()
        .filter(|(_, w)| natural_rep(w) == target)
        .map(|(s, _)| MatchReport {
            pattern_id: id,
            start: s + 1,
            end: s + m,
        })
        .collect()
}

/// Rank of each `x[i]` among `x[max(1, i-k)..=i]` by direct counting.
/// `None` means an unbounded window.
pub fn brute_windowed_ranks<T: Ord>(x: &[T], k: Option<usize>) -> Vec<usize> {
    (0..x.len())
        .map(|i| {
            let lo = k.map_or(0, |k| i.saturating_sub(k));
            1 + (lo..i).filter(|&j| x[j] <= x[i]).count()
        })
        .collect()
}

/// Every start whose window has the same windowed ranks as the pattern.
pub fn naive_search_windowed<T: Ord>(text: &[T], pattern: &[T], k: usize) -> Vec<MatchReport> {
    let m = pattern.len();
    if m == 0 || m > text.len() {
        return Vec::new();
    }
    let target = brute_windowed_ranks(pattern, Some(k));
    text.windows(m)
        .enumerate()
        .filter(|(_, w)| brute_windowed_ranks(w, Some(k)) == target)
        .map(|(s, _)| MatchReport {
            pattern_id: 0,
            start: s + 1,
            end: s + m,
        })
        .collect()
}

/// Failure function straight from its definition: for each `q`, the largest
/// `k < q` with `P[1..k]` order-isomorphic to `P[q-k+1..q]`.
pub fn naive_failure<T: Ord>(pattern: &[T]) -> Vec<usize> {
    let m = pattern.len();
    (1..=m)
        .map(|q| {
            (1..q)
                .rev()
                .find(|&k| natural_rep(&pattern[..k]) == natural_rep(&pattern[q - k..q]))
                .unwrap_or(0)
        })
        .collect()
}

/// [`naive_failure`] under windowed ranks.
pub fn naive_failure_windowed<T: Ord>(pattern: &[T], k: usize) -> Vec<usize> {
    let m = pattern.len();
    let ranks = |s: &[T]| brute_windowed_ranks(s, Some(k));
    (1..=m)
        .map(|q| {
            (1..q)
                .rev()
                .find(|&len| ranks(&pattern[..len]) == ranks(&pattern[q - len..q]))
                .unwrap_or(0)
        })
        .collect()
}

/// Union of [`naive_search`] over all patterns, ordered by end then id.
///
/// With [`OutputMode::LongestOnly`] only the longest pattern per end
/// position survives, ties going to the smallest pattern id.
pub fn naive_multi<T: Ord>(text: &[T], patterns: &[Vec<T>], mode: OutputMode) -> Vec<MatchReport> {
    let mut all: Vec<MatchReport> = patterns
        .iter()
        .enumerate()
        .flat_map(|(id, p)| naive_search_as(text, p, id))
        .collect();
    all.sort_by_key(|m| (m.end, m.pattern_id));
    if mode == OutputMode::ReportAll {
        return all;
    }
    let mut best: BTreeMap<usize, MatchReport> = BTreeMap::new();
    for m in all {
        best.entry(m.end)
            .and_modify(|cur| {
                let longer = m.start < cur.start;
                let tie_lower = m.start == cur.start && m.pattern_id < cur.pattern_id;
                if longer || tie_lower {
                    *cur = m;
                }
            })
            .or_insert(m);
    }
    best.into_values().collect()
}

/// Parameters for [`generate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub text_len_max: usize,
    pub pattern_len_max: usize,
    pub value_range: RangeInclusive<i64>,
    pub pattern_count_max: usize,
    pub seed: u64,
}

impl GeneratorConfig {
    fn validate(&self) -> Result<()> {
        let fields = [
            ("text_len_max", self.text_len_max),
            ("pattern_len_max", self.pattern_len_max),
            ("pattern_count_max", self.pattern_count_max),
        ];
        if let Some((name, _)) = fields.iter().find(|(_, v)| *v == 0) {
            return Err(Error::InvalidConfig(format!("{name} must be positive")));
        }
        if self.value_range.is_empty() {
            return Err(Error::InvalidConfig(format!(
                "value range {:?} is empty",
                self.value_range
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub text: Vec<i64>,
    pub patterns: Vec<Vec<i64>>,
}

/// Endless deterministic stream of instances.
#[derive(Clone, Debug)]
pub struct Generator {
    config: GeneratorConfig,
    rng: ChaCha8Rng,
}

pub fn generate(config: GeneratorConfig) -> Result<Generator> {
    config.validate()?;
    Ok(Generator {
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        config,
    })
}

impl Generator {
    fn values(&mut self, len: usize) -> Vec<i64> {
        let range = self.config.value_range.clone();
        (0..len)
            .map(|_| self.rng.random_range(range.clone()))
            .collect()
    }
}

impl Iterator for Generator {
    type Item = Instance;

    fn next(&mut self) -> Option<Instance> {
        let text_len = self.rng.random_range(0..=self.config.text_len_max);
        let text = self.values(text_len);
        let count = self.rng.random_range(1..=self.config.pattern_count_max);
        let patterns = (0..count)
            .map(|_| {
                let len = self.rng.random_range(1..=self.config.pattern_len_max);
                self.values(len)
            })
            .collect();
        Some(Instance { text, patterns })
    }
}
