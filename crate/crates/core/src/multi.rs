//! Multiple-pattern order-preserving search with an Aho–Corasick automaton
//! built over prefix representations.
//!
//! Each trie state stands for a prefix of some pattern's prefix
//! representation. Failure links are computed breadth-first; because a rank
//! depends on which values surround it, the construction keeps one
//! order-statistic tree per representative pattern holding the values of the
//! current candidate suffix.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::probe::{Op, Probe, ScanEvent};
use crate::representations::{prefix_rep, PrefixRep};
use crate::window::Window;
use crate::MatchReport;

pub const ROOT: usize = 0;

/// Which patterns to report at an accepting position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputMode {
    /// Only the longest pattern ending there (smallest id on ties).
    #[default]
    LongestOnly,
    /// Every pattern ending there, found by walking the failure chain.
    ReportAll,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcState {
    pub id: usize,
    /// Forward transitions keyed by rank; labels lie in `1..=depth + 1`.
    pub goto: BTreeMap<usize, usize>,
    pub fail: usize,
    pub depth: usize,
    /// Smallest pattern id whose prefix representation passes through here.
    pub rep_pattern: usize,
    /// Longest pattern that ends at this state, directly or via failure.
    pub output: Option<usize>,
    /// Patterns whose whole prefix representation ends exactly here.
    pub terminals: Vec<usize>,
    /// Parent state and the rank label on the edge from it.
    pub parent: Option<(usize, usize)>,
}

impl AcState {
    fn new(id: usize, depth: usize, rep_pattern: usize, parent: Option<(usize, usize)>) -> Self {
        AcState {
            id,
            goto: BTreeMap::new(),
            fail: ROOT,
            depth,
            rep_pattern,
            output: None,
            terminals: Vec::new(),
            parent,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AcAutomaton<T> {
    states: Vec<AcState>,
    patterns: Vec<Vec<T>>,
    reps: Vec<PrefixRep>,
    failure_built: bool,
}

impl<T: Ord + Copy> AcAutomaton<T> {
    /// Trie plus failure links.
    pub fn new(patterns: Vec<Vec<T>>) -> Result<Self> {
        build_ac_failure(build_trie(patterns)?)
    }

    /// As [`AcAutomaton::new`], reporting construction work to `probe`.
    pub fn new_with(patterns: Vec<Vec<T>>, probe: &mut impl Probe) -> Result<Self> {
        build_ac_failure_with(build_trie(patterns)?, probe)
    }

    pub fn states(&self) -> &[AcState] {
        &self.states
    }

    pub fn state(&self, id: usize) -> &AcState {
        &self.states[id]
    }

    pub fn patterns(&self) -> &[Vec<T>] {
        &self.patterns
    }

    pub fn prefix_reps(&self) -> &[PrefixRep] {
        &self.reps
    }

    pub fn is_failure_built(&self) -> bool {
        self.failure_built
    }

    pub fn goto(&self, state: usize, rank: usize) -> Option<usize> {
        self.states[state].goto.get(&rank).copied()
    }

    /// Rank labels on the path from the root to `state`.
    pub fn labels(&self, mut state: usize) -> Vec<usize> {
        let mut labels = Vec::with_capacity(self.states[state].depth);
        while let Some((parent, label)) = self.states[state].parent {
            labels.push(label);
            state = parent;
        }
        labels.reverse();
        labels
    }

    /// State whose path spells `labels`, if any.
    pub fn find(&self, labels: &[usize]) -> Option<usize> {
        labels
            .iter()
            .try_fold(ROOT, |state, &label| self.goto(state, label))
    }

    /// Total number of pattern values.
    pub fn total_len(&self) -> usize {
        self.patterns.iter().map(Vec::len).sum()
    }
}

/// Builds the trie of prefix representations. Failure links are left at the
/// root until [`build_ac_failure`] runs.
pub fn build_trie<T: Ord + Copy>(patterns: Vec<Vec<T>>) -> Result<AcAutomaton<T>> {
    if patterns.is_empty() {
        return Err(Error::EmptyPatternSet);
    }
    if let Some(id) = patterns.iter().position(Vec::is_empty) {
        return Err(Error::EmptyPattern(id));
    }
    let reps: Vec<PrefixRep> = patterns.iter().map(|p| prefix_rep(p)).collect();
    let mut states = vec![AcState::new(ROOT, 0, 0, None)];
    for (id, rep) in reps.iter().enumerate() {
        let mut cur = ROOT;
        for &label in rep.iter() {
            cur = match states[cur].goto.get(&label) {
                Some(&next) => next,
                None => {
                    let next = states.len();
                    let depth = states[cur].depth + 1;
                    states.push(AcState::new(next, depth, id, Some((cur, label))));
                    states[cur].goto.insert(label, next);
                    next
                }
            };
        }
        let end = &mut states[cur];
        end.terminals.push(id);
        end.output.get_or_insert(id);
    }
    Ok(AcAutomaton {
        states,
        patterns,
        reps,
        failure_built: false,
    })
}

pub fn build_ac_failure<T: Ord + Copy>(automaton: AcAutomaton<T>) -> Result<AcAutomaton<T>> {
    build_ac_failure_with(automaton, &mut ())
}

/// Computes failure links and inherited outputs breadth-first.
///
/// For every pattern `b` the tree `trees[b]` holds, after the failure link
/// of a state `q` with `rep_pattern == b` is known, the last
/// `depth[fail[q]]` values of `b[1..=depth[q]]`.
pub fn build_ac_failure_with<T: Ord + Copy>(
    mut automaton: AcAutomaton<T>,
    probe: &mut impl Probe,
) -> Result<AcAutomaton<T>> {
    if automaton.failure_built {
        return Ok(automaton);
    }
    let AcAutomaton {
        states, patterns, ..
    } = &mut automaton;
    let mut trees: HashMap<usize, Window<'_, T>> = HashMap::new();
    let mut queue = VecDeque::from([ROOT]);
    states[ROOT].fail = ROOT;

    while let Some(parent) = queue.pop_front() {
        let children: Vec<usize> = states[parent].goto.values().copied().collect();
        for child in children {
            queue.push_back(child);
            if parent == ROOT {
                states[child].fail = ROOT;
                continue;
            }
            let rep = states[child].rep_pattern;
            let depth = states[child].depth;
            let parent_fail_depth = states[states[parent].fail].depth;
            let win = trees
                .entry(rep)
                .or_insert_with(|| Window::new(&patterns[rep]));
            if states[parent].rep_pattern != rep {
                debug_assert!(win.is_empty());
                for pos in depth - parent_fail_depth..depth {
                    win.push(pos, probe);
                }
            }
            win.push(depth, probe);
            debug_assert_eq!(win.len(), parent_fail_depth + 1);

            let mut candidate = states[parent].fail;
            let mut r = win.rank(depth, probe);
            let target = loop {
                if let Some(&next) = states[candidate].goto.get(&r) {
                    break next;
                }
                // the root accepts rank 1, which is all a lone value can have
                debug_assert_ne!(candidate, ROOT);
                candidate = states[candidate].fail;
                probe.count(Op::FailTransition);
                win.keep_last(states[candidate].depth + 1, probe);
                r = win.rank(depth, probe);
            };
            states[child].fail = target;
            if states[child].output.is_none() {
                states[child].output = states[target].output;
            }
        }
    }
    automaton.failure_built = true;
    Ok(automaton)
}

pub fn search_multi<T: Ord + Copy>(text: &[T], automaton: &AcAutomaton<T>) -> Vec<MatchReport> {
    search_multi_with(text, automaton, OutputMode::LongestOnly, &mut ())
}

/// Scans `text` once, reporting matches by increasing end and pattern id.
pub fn search_multi_with<T: Ord + Copy>(
    text: &[T],
    automaton: &AcAutomaton<T>,
    mode: OutputMode,
    probe: &mut impl Probe,
) -> Vec<MatchReport> {
    assert!(
        automaton.failure_built,
        "failure links must be built before searching"
    );
    let states = &automaton.states;
    let lengths: Vec<usize> = automaton.patterns.iter().map(Vec::len).collect();
    let mut found = Vec::new();
    let mut win = Window::new(text);
    let mut q = ROOT;
    for i in 1..=text.len() {
        win.push(i, probe);
        let mut r = win.rank(i, probe);
        let next = loop {
            if let Some(&next) = states[q].goto.get(&r) {
                break next;
            }
            let to = states[q].fail;
            let deleted = win.keep_last(states[to].depth + 1, probe);
            probe.count(Op::FailTransition);
            probe.record(ScanEvent::Failure {
                position: i,
                from: q,
                to,
                deleted,
            });
            q = to;
            r = win.rank(i, probe);
        };
        probe.record(ScanEvent::Forward {
            position: i,
            from: q,
            to: next,
            rank: Some(r),
        });
        q = next;

        let before = found.len();
        match mode {
            OutputMode::LongestOnly => {
                if let Some(id) = states[q].output {
                    found.push(MatchReport::ending_at(id, i, lengths[id]));
                }
            }
            OutputMode::ReportAll => {
                let mut s = q;
                while s != ROOT {
                    for &id in &states[s].terminals {
                        found.push(MatchReport::ending_at(id, i, lengths[id]));
                    }
                    s = states[s].fail;
                }
                found[before..].sort_by_key(|m| m.pattern_id);
            }
        }
        for report in &found[before..] {
            probe.record(ScanEvent::Report(*report));
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe::{OpCounters, Trace};

    fn sample_patterns() -> Vec<Vec<i64>> {
        vec![
            vec![23, 35, 15, 53, 47],
            vec![66, 71, 57, 79, 84, 93],
            vec![43, 51, 62, 73],
        ]
    }

    #[test]
    fn trie_over_prefix_representations() {
        let ac = build_trie(sample_patterns()).unwrap();
        let reps: Vec<&[usize]> = ac.prefix_reps().iter().map(|r| r.as_slice()).collect();
        assert_eq!(
            reps,
            [&[1, 2, 1, 4, 4][..], &[1, 2, 1, 4, 5, 6], &[1, 2, 3, 4]]
        );

        let mut prefixes: Vec<Vec<usize>> = (0..ac.states().len()).map(|s| ac.labels(s)).collect();
        prefixes.sort();
        let expected: Vec<Vec<usize>> = vec![
            vec![],
            vec![1],
            vec![1, 2],
            vec![1, 2, 1],
            vec![1, 2, 1, 4],
            vec![1, 2, 1, 4, 4],
            vec![1, 2, 1, 4, 5],
            vec![1, 2, 1, 4, 5, 6],
            vec![1, 2, 3],
            vec![1, 2, 3, 4],
        ];
        assert_eq!(prefixes, expected);
        assert!(!ac.is_failure_built());
    }

    #[test]
    fn single_pattern_trie_is_a_path() {
        let ac = build_trie(vec![vec![33, 42, 73, 57]]).unwrap();
        assert_eq!(ac.states().len(), 5);
        assert_eq!(ac.labels(4), [1, 2, 3, 3]);
    }

    #[test]
    fn representative_is_smallest_pattern_id() {
        let ac = build_trie(sample_patterns()).unwrap();
        let rep = |labels: &[usize]| ac.state(ac.find(labels).unwrap()).rep_pattern;
        assert_eq!(rep(&[1, 2, 1, 4]), 0);
        assert_eq!(rep(&[1, 2, 1, 4, 5]), 1);
        assert_eq!(rep(&[1, 2, 3]), 2);
    }

    #[test]
    fn failure_links_of_sample_automaton() {
        let ac = AcAutomaton::new(sample_patterns()).unwrap();
        let fail_of = |labels: &[usize]| ac.labels(ac.state(ac.find(labels).unwrap()).fail);
        assert_eq!(fail_of(&[1, 2, 1, 4]), [1, 2]);
        assert_eq!(fail_of(&[1, 2, 1, 4, 4]), [1]);
        assert_eq!(fail_of(&[1, 2, 1, 4, 5]), [1, 2, 3]);
        assert_eq!(fail_of(&[1]), Vec::<usize>::new());
    }

    #[test]
    fn construction_inserts_at_most_total_length() {
        let mut counters = OpCounters::new();
        let ac = AcAutomaton::new_with(sample_patterns(), &mut counters).unwrap();
        assert!(counters.tree_inserts <= ac.total_len() as u64);
        assert!(counters.tree_deletes <= counters.tree_inserts);
    }

    #[test]
    fn sample_scan_transcript() {
        let ac = AcAutomaton::new(sample_patterns()).unwrap();
        let mut trace = Trace::default();
        search_multi_with(&[20, 30, 10, 15], &ac, OutputMode::LongestOnly, &mut trace);
        let at4: Vec<_> = trace
            .events
            .iter()
            .filter_map(|e| match *e {
                ScanEvent::Failure {
                    position: 4,
                    from,
                    to,
                    deleted,
                } => Some((ac.labels(from), ac.labels(to), Some(deleted), None)),
                ScanEvent::Forward {
                    position: 4,
                    from,
                    to,
                    rank,
                } => Some((ac.labels(from), ac.labels(to), None, rank)),
                _ => None,
            })
            .collect();
        assert_eq!(
            at4,
            vec![
                (vec![1, 2, 1], vec![1], Some(2), None),
                (vec![1], vec![1, 2], None, Some(2)),
            ]
        );
    }

    #[test]
    fn pattern_matches_itself() {
        let ac = AcAutomaton::new(sample_patterns()).unwrap();
        let found = search_multi(&[23, 35, 15, 53, 47], &ac);
        assert!(found.contains(&MatchReport {
            pattern_id: 0,
            start: 1,
            end: 5
        }));
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(
            build_trie::<i64>(vec![]).unwrap_err(),
            Error::EmptyPatternSet
        );
        assert_eq!(
            build_trie(vec![vec![1], vec![]]).unwrap_err(),
            Error::EmptyPattern(1)
        );
        let ac = AcAutomaton::new(sample_patterns()).unwrap();
        assert!(search_multi(&[], &ac).is_empty());
    }

    #[test]
    fn identical_representations_share_a_terminal() {
        let ac = AcAutomaton::new(vec![vec![1, 2], vec![5, 9]]).unwrap();
        let found = search_multi(&[3, 4], &ac);
        assert_eq!(
            found,
            vec![MatchReport {
                pattern_id: 0,
                start: 1,
                end: 2
            }]
        );
        let mut all = search_multi_with(&[3, 4], &ac, OutputMode::ReportAll, &mut ());
        all.sort();
        assert_eq!(all.len(), 2);
    }
}
