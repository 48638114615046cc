//! Representations of the relative order of a numeric sequence.
//!
//! * [`NaturalRep`]: rank of every value within the whole sequence.
//! * [`PrefixRep`]: rank of every value within the prefix that ends at it.
//! * [`NearestNeighborRep`]: for every value, the positions of its closest
//!   smaller and larger predecessors.
//!
//! Two sequences of equal length are order-isomorphic exactly when any one
//! of these representations coincide. All positions are 1-based and ties
//! between equal values are broken by position (earlier is smaller).

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::os_tree::IndexOrSentinel;
use crate::window::Window;

/// `ranks[i]` is the rank of `x[i]` in the whole of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NaturalRep(Vec<usize>);

/// `ranks[i]` is the rank of `x[i]` in `x[1..=i]`, or in the trailing
/// window `x[i-k..=i]` for the windowed variant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrefixRep(Vec<usize>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NearestNeighborRep {
    pub prev: Vec<IndexOrSentinel>,
    pub next: Vec<IndexOrSentinel>,
}

impl NaturalRep {
    /// Accepts any permutation of `1..=n`.
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        let n = ranks.len();
        let mut seen = vec![false; n];
        for (i, &r) in ranks.iter().enumerate() {
            if r == 0 || r > n || std::mem::replace(&mut seen[r - 1], true) {
                return Err(Error::InvalidRepresentation(format!(
                    "natural rank {r} at position {} is not part of a permutation of 1..{n}",
                    i + 1
                )));
            }
        }
        Ok(NaturalRep(ranks))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl PrefixRep {
    /// Accepts any sequence with `1 <= ranks[i] <= i`.
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        for (i, &r) in ranks.iter().enumerate() {
            if r == 0 || r > i + 1 {
                return Err(Error::InvalidRepresentation(format!(
                    "prefix rank {r} at position {} is outside 1..={}",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(PrefixRep(ranks))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl NearestNeighborRep {
    pub fn len(&self) -> usize {
        self.prev.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prev.is_empty()
    }
}

impl Deref for NaturalRep {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl Deref for PrefixRep {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

pub fn natural_rep<T: Ord>(x: &[T]) -> NaturalRep {
    let mut order: Vec<usize> = (0..x.len()).collect();
    // stable: equal values keep index order
    order.sort_by(|&a, &b| x[a].cmp(&x[b]));
    let mut ranks = vec![0; x.len()];
    for (rank, &pos) in order.iter().enumerate() {
        ranks[pos] = rank + 1;
    }
    NaturalRep(ranks)
}

pub fn prefix_rep<T: Ord + Copy>(x: &[T]) -> PrefixRep {
    prefix_rep_within(x, None)
}

/// Rank of each `x[i]` among `x[max(1, i-k)..=i]`: the value itself and at
/// most `k` predecessors.
pub fn windowed_prefix_rep<T: Ord + Copy>(x: &[T], k: usize) -> Result<PrefixRep> {
    if k == 0 {
        return Err(Error::ZeroWindow);
    }
    Ok(prefix_rep_within(x, Some(k)))
}

pub(crate) fn prefix_rep_within<T: Ord + Copy>(x: &[T], window: Option<usize>) -> PrefixRep {
    let mut win = Window::new(x);
    let probe = &mut ();
    let ranks = (1..=x.len())
        .map(|i| {
            if let Some(k) = window {
                win.retain_from(i.saturating_sub(k), probe);
            }
            win.push(i, probe);
            win.rank(i, probe)
        })
        .collect();
    PrefixRep(ranks)
}

pub fn nn_rep<T: Ord + Copy>(x: &[T]) -> NearestNeighborRep {
    nn_rep_within(x, None)
}

/// Nearest neighbors restricted to the `k` predecessors of each value.
pub fn windowed_nn_rep<T: Ord + Copy>(x: &[T], k: usize) -> Result<NearestNeighborRep> {
    if k == 0 {
        return Err(Error::ZeroWindow);
    }
    Ok(nn_rep_within(x, Some(k)))
}

pub(crate) fn nn_rep_within<T: Ord + Copy>(x: &[T], window: Option<usize>) -> NearestNeighborRep {
    let mut win = Window::new(x);
    let probe = &mut ();
    let mut prev = Vec::with_capacity(x.len());
    let mut next = Vec::with_capacity(x.len());
    for i in 1..=x.len() {
        if let Some(k) = window {
            win.retain_from(i.saturating_sub(k), probe);
        }
        win.push(i, probe);
        prev.push(win.tree().find_prev_index(x[i - 1], i));
        next.push(win.tree().find_next_index(x[i - 1], i));
    }
    NearestNeighborRep { prev, next }
}

pub fn natural_to_prefix(s: &NaturalRep) -> PrefixRep {
    let mut seen = Fenwick::new(s.len());
    let ranks = s
        .iter()
        .map(|&r| {
            seen.add(r, 1);
            seen.prefix_sum(r) as usize
        })
        .collect();
    PrefixRep(ranks)
}

/// Inverse of [`natural_to_prefix`]. Walking from the back, the last value's
/// prefix rank picks its natural rank among those not yet assigned.
pub fn prefix_to_natural(p: &PrefixRep) -> NaturalRep {
    let n = p.len();
    let mut free = Fenwick::new(n);
    for r in 1..=n {
        free.add(r, 1);
    }
    let mut ranks = vec![0; n];
    for i in (0..n).rev() {
        let r = free.select(p[i] as i64);
        free.add(r, -1);
        ranks[i] = r;
    }
    NaturalRep(ranks)
}

struct Fenwick {
    tree: Vec<i64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0; n + 1],
        }
    }

    fn add(&mut self, mut i: usize, delta: i64) {
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    fn prefix_sum(&self, mut i: usize) -> i64 {
        let mut sum = 0;
        while i > 0 {
            sum += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        sum
    }

    /// Smallest `i` whose prefix sum reaches `k`.
    fn select(&self, mut k: i64) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut step = n.next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] < k {
                pos = next;
                k -= self.tree[next];
            }
            step >>= 1;
        }
        pos + 1
    }
}
