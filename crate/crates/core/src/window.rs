use crate::os_tree::OrderStatTree;
use crate::probe::{Op, Probe};

/// A contiguous run `seq[lo..hi)` (1-based, half-open) mirrored in an
/// order-statistic tree. Values enter at the back and leave from the front.
pub(crate) struct Window<'a, T> {
    seq: &'a [T],
    tree: OrderStatTree<T>,
    lo: usize,
    hi: usize,
}

impl<'a, T: Ord + Copy> Window<'a, T> {
    pub(crate) fn new(seq: &'a [T]) -> Self {
        Window {
            seq,
            tree: OrderStatTree::new(),
            lo: 1,
            hi: 1,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.hi - self.lo
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    /// Appends position `pos`, which must directly follow the stored run
    /// unless the window is empty.
    pub(crate) fn push(&mut self, pos: usize, probe: &mut impl Probe) {
        if self.is_empty() {
            self.lo = pos;
            self.hi = pos;
        }
        debug_assert_eq!(pos, self.hi, "window positions must stay contiguous");
        self.tree
            .insert(self.seq[pos - 1], pos)
            .expect("window positions are distinct");
        probe.count(Op::TreeInsert);
        self.hi += 1;
    }

    /// Drops stored positions below `new_lo`; returns how many were dropped.
    pub(crate) fn retain_from(&mut self, new_lo: usize, probe: &mut impl Probe) -> usize {
        let mut dropped = 0;
        while self.lo < new_lo && self.lo < self.hi {
            self.tree
                .delete(self.seq[self.lo - 1], self.lo)
                .expect("front of window is stored");
            probe.count(Op::TreeDelete);
            self.lo += 1;
            dropped += 1;
        }
        dropped
    }

    /// Keeps only the newest `keep` positions.
    pub(crate) fn keep_last(&mut self, keep: usize, probe: &mut impl Probe) -> usize {
        let new_lo = self.hi.saturating_sub(keep).max(self.lo);
        self.retain_from(new_lo, probe)
    }

    pub(crate) fn tree(&self) -> &OrderStatTree<T> {
        &self.tree
    }

    pub(crate) fn rank(&self, pos: usize, probe: &mut impl Probe) -> usize {
        probe.count(Op::RankQuery);
        self.tree.rank(self.seq[pos - 1], pos)
    }
}
