//! Instrumentation hooks shared by the matchers.
//!
//! Every search and construction routine has a `*_with` form taking a
//! [`Probe`]. The plain forms pass `&mut ()`, which compiles to nothing.

use crate::os_tree::IndexOrSentinel;
use crate::MatchReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    /// One comparison between two stored values (sentinels excluded).
    Comparison,
    TreeInsert,
    TreeDelete,
    RankQuery,
    FailTransition,
}

/// Outcome of a nearest-neighbor check of a new text value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Fits,
    TooLow,
    TooHigh,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanEvent {
    /// Forward move after reading `position`. For single-pattern scans the
    /// states are matched-prefix lengths; for the automaton they are state
    /// ids. `rank` is absent when no rank was computed.
    Forward {
        position: usize,
        from: usize,
        to: usize,
        rank: Option<usize>,
    },
    /// Failure transition taken while reading `position`; `deleted` values
    /// were dropped from the front of the window.
    Failure {
        position: usize,
        from: usize,
        to: usize,
        deleted: usize,
    },
    /// Nearest-neighbor test of the value at `position` against the text
    /// positions that bound it in the pattern, with `q` values matched.
    NeighborCheck {
        position: usize,
        q: usize,
        lower: IndexOrSentinel,
        upper: IndexOrSentinel,
        verdict: Verdict,
    },
    Report(MatchReport),
}

pub trait Probe {
    fn count(&mut self, _op: Op) {}
    fn record(&mut self, _event: ScanEvent) {}
}

impl Probe for () {}

impl<P: Probe + ?Sized> Probe for &mut P {
    fn count(&mut self, op: Op) {
        (**self).count(op)
    }
    fn record(&mut self, event: ScanEvent) {
        (**self).record(event)
    }
}

/// Operation counts for one run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounters {
    pub comparisons: u64,
    pub tree_inserts: u64,
    pub tree_deletes: u64,
    pub rank_queries: u64,
    pub fail_transitions: u64,
}

impl OpCounters {
    pub fn new() -> Self {
        Self::default()
    }

    /// `(name, value)` pairs in a fixed order, for `key=value` printing.
    pub fn entries(&self) -> [(&'static str, u64); 5] {
        [
            ("comparisons", self.comparisons),
            ("tree_inserts", self.tree_inserts),
            ("tree_deletes", self.tree_deletes),
            ("rank_queries", self.rank_queries),
            ("fail_transitions", self.fail_transitions),
        ]
    }
}

impl Probe for OpCounters {
    fn count(&mut self, op: Op) {
        let slot = match op {
            Op::Comparison => &mut self.comparisons,
            Op::TreeInsert => &mut self.tree_inserts,
            Op::TreeDelete => &mut self.tree_deletes,
            Op::RankQuery => &mut self.rank_queries,
            Op::FailTransition => &mut self.fail_transitions,
        };
        *slot += 1;
    }
}

/// Records every event, and counts operations alongside.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub events: Vec<ScanEvent>,
    pub counters: OpCounters,
}

impl Probe for Trace {
    fn count(&mut self, op: Op) {
        self.counters.count(op);
    }
    fn record(&mut self, event: ScanEvent) {
        self.events.push(event);
    }
}
