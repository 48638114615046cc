//! Order-preserving pattern matching on numeric sequences.
//!
//! A window of a text matches a pattern when its values stand in the same
//! relative order as the pattern's values, e.g. `(21, 24, 50, 29)` matches
//! `(33, 42, 73, 57)`. The crate offers
//!
//! * single-pattern search with a rank-based scanner ([`search_prefix`]) and
//!   a comparison-only scanner ([`search_nn`]), both driven by the same
//!   failure function,
//! * a windowed mode that only relates each value to its last `k`
//!   predecessors ([`SinglePatternIndex::windowed`]),
//! * multiple-pattern search through an Aho–Corasick automaton over prefix
//!   representations ([`AcAutomaton`]),
//! * brute-force references and a random instance generator ([`oracle`]).
//!
//! Values only need a total order. Equal values are ordered by position,
//! so a run of equal values behaves like a strictly increasing run.

pub mod error;
pub mod multi;
pub mod oracle;
pub mod os_tree;
pub mod probe;
pub mod representations;
pub mod single;
mod window;

pub use error::{Error, Result};
pub use multi::{
    build_ac_failure, build_trie, search_multi, search_multi_with, AcAutomaton, AcState, OutputMode,
};
pub use os_tree::{Element, IndexOrSentinel, OrderStatTree};
pub use probe::{Op, OpCounters, Probe, ScanEvent, Trace, Verdict};
pub use representations::{
    natural_rep, natural_to_prefix, nn_rep, prefix_rep, prefix_to_natural, windowed_nn_rep,
    windowed_prefix_rep, NaturalRep, NearestNeighborRep, PrefixRep,
};
pub use single::{
    build_failure_nn, build_failure_prefix, build_failure_prefix_windowed, search_nn,
    search_nn_with, search_prefix, search_prefix_with, search_windowed, FailureFunction,
    SinglePatternIndex,
};

/// One occurrence: positions `start..=end` (1-based) of the text match
/// pattern `pattern_id`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatchReport {
    pub pattern_id: usize,
    pub start: usize,
    pub end: usize,
}

impl MatchReport {
    pub fn ending_at(pattern_id: usize, end: usize, len: usize) -> Self {
        MatchReport {
            pattern_id,
            start: end + 1 - len,
            end,
        }
    }
}
