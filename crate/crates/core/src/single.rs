//! Single-pattern order-preserving search in the style of Knuth–Morris–Pratt.
//!
//! Two scanners share one failure function:
//!
//! * [`search_prefix`] keeps the matched text window in an order-statistic
//!   tree and compares the rank of each new value with the pattern's prefix
//!   representation. `O(n log m)`.
//! * [`search_nn`] compares each new value with the two text positions that
//!   bound it in the pattern's nearest-neighbor representation. `O(n)`
//!   after preprocessing, at most `4n` value comparisons.
//!
//! An index built with [`SinglePatternIndex::windowed`] only looks at the
//! last `k` values before each position, on both the pattern and the text
//! side.

use std::cmp::Ordering;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::os_tree::{Element, IndexOrSentinel};
use crate::probe::{Op, Probe, ScanEvent, Verdict};
use crate::representations::{nn_rep_within, prefix_rep_within, NearestNeighborRep, PrefixRep};
use crate::window::Window;
use crate::MatchReport;

/// `pi[q]` (1-based `q`) is the length of the longest proper prefix of the
/// pattern that is order-isomorphic to the suffix of the same length of
/// `P[1..=q]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FailureFunction(Vec<usize>);

impl FailureFunction {
    /// Wraps raw values after checking `pi[1] = 0` and `pi[q] < q`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        for (i, &v) in values.iter().enumerate() {
            if v > i {
                return Err(Error::InvalidRepresentation(format!(
                    "failure value {v} at position {} must be below {}",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(FailureFunction(values))
    }

    /// `pi[q]` for 1-based `q`.
    pub fn at(&self, q: usize) -> usize {
        self.0[q - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl Deref for FailureFunction {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

/// A preprocessed pattern. Immutable once built; scans borrow it.
#[derive(Clone, Debug)]
pub struct SinglePatternIndex<T> {
    pattern: Vec<T>,
    mu: PrefixRep,
    nu: NearestNeighborRep,
    pi: FailureFunction,
    window: Option<usize>,
}

impl<T: Ord + Copy> SinglePatternIndex<T> {
    pub fn new(pattern: Vec<T>) -> Result<Self> {
        Self::build(pattern, None)
    }

    /// Index for matching on the last `k` values only.
    pub fn windowed(pattern: Vec<T>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroWindow);
        }
        Self::build(pattern, Some(k))
    }

    fn build(pattern: Vec<T>, window: Option<usize>) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern(0));
        }
        let mu = prefix_rep_within(&pattern, window);
        let nu = nn_rep_within(&pattern, window);
        let pi = FailureFunction(failure_nn_impl(&pattern, &nu, &mut ()));
        Ok(SinglePatternIndex {
            pattern,
            mu,
            nu,
            pi,
            window,
        })
    }

    pub fn pattern(&self) -> &[T] {
        &self.pattern
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    pub fn prefix_rep(&self) -> &PrefixRep {
        &self.mu
    }

    pub fn nn_rep(&self) -> &NearestNeighborRep {
        &self.nu
    }

    pub fn failure(&self) -> &FailureFunction {
        &self.pi
    }

    pub fn window(&self) -> Option<usize> {
        self.window
    }
}

/// First position of the window that has to be kept when `len` values
/// ending just before `pos` are matched.
fn window_start(pos: usize, len: usize, window: Option<usize>) -> usize {
    let start = pos - len;
    match window {
        Some(k) => start.max(pos.saturating_sub(k)),
        None => start,
    }
}

/// Failure function computed from ranks in an order-statistic tree.
pub fn build_failure_prefix<T: Ord + Copy>(
    pattern: &[T],
    mu: &PrefixRep,
) -> Result<FailureFunction> {
    check_len(pattern.len(), mu.len())?;
    Ok(FailureFunction(failure_prefix_impl(
        pattern,
        mu,
        None,
        &mut (),
    )))
}

/// [`build_failure_prefix`] for a windowed prefix representation.
pub fn build_failure_prefix_windowed<T: Ord + Copy>(
    pattern: &[T],
    mu: &PrefixRep,
    k: usize,
) -> Result<FailureFunction> {
    if k == 0 {
        return Err(Error::ZeroWindow);
    }
    check_len(pattern.len(), mu.len())?;
    Ok(FailureFunction(failure_prefix_impl(
        pattern,
        mu,
        Some(k),
        &mut (),
    )))
}

/// Failure function computed by value comparisons only. Works for plain and
/// windowed nearest-neighbor representations alike.
pub fn build_failure_nn<T: Ord + Copy>(
    pattern: &[T],
    nu: &NearestNeighborRep,
) -> Result<FailureFunction> {
    check_len(pattern.len(), nu.len())?;
    Ok(FailureFunction(failure_nn_impl(pattern, nu, &mut ())))
}

/// Same as [`build_failure_nn`], reporting comparisons to `probe`.
pub fn build_failure_nn_with<T: Ord + Copy>(
    pattern: &[T],
    nu: &NearestNeighborRep,
    probe: &mut impl Probe,
) -> Result<FailureFunction> {
    check_len(pattern.len(), nu.len())?;
    Ok(FailureFunction(failure_nn_impl(pattern, nu, probe)))
}

fn check_len(sequence: usize, representation: usize) -> Result<()> {
    if sequence != representation {
        return Err(Error::LengthMismatch {
            sequence,
            representation,
        });
    }
    Ok(())
}

fn failure_prefix_impl<T: Ord + Copy>(
    p: &[T],
    mu: &[usize],
    window: Option<usize>,
    probe: &mut impl Probe,
) -> Vec<usize> {
    let m = p.len();
    let mut pi = vec![0; m];
    let mut win = Window::new(p);
    let mut k = 0;
    // The candidate suffix P[q-k..q-1] (clipped to the window) is in the tree.
    for q in 2..=m {
        win.push(q, probe);
        let mut r = win.rank(q, probe);
        while k > 0 && r != mu[k] {
            let next = pi[k - 1];
            win.retain_from(window_start(q, next, window), probe);
            probe.count(Op::FailTransition);
            k = next;
            r = win.rank(q, probe);
        }
        k += 1;
        pi[q - 1] = k;
        win.retain_from(window_start(q + 1, k, window), probe);
    }
    pi
}

fn failure_nn_impl<T: Ord + Copy>(
    p: &[T],
    nu: &NearestNeighborRep,
    probe: &mut impl Probe,
) -> Vec<usize> {
    let m = p.len();
    let mut pi = vec![0; m];
    let mut k = 0;
    for q in 2..=m {
        while k > 0 {
            let base = q - k;
            let verdict = check_neighbors(
                p,
                q,
                nu.prev[k].shifted(base),
                nu.next[k].shifted(base),
                probe,
            );
            if verdict == Verdict::Fits {
                break;
            }
            probe.count(Op::FailTransition);
            k = pi[k - 1];
        }
        k += 1;
        pi[q - 1] = k;
    }
    pi
}

/// Tests `seq[lower] < seq[pos] < seq[upper]` under the `(value, index)`
/// order, treating sentinels as infinities.
fn check_neighbors<T: Ord + Copy>(
    seq: &[T],
    pos: usize,
    lower: IndexOrSentinel,
    upper: IndexOrSentinel,
    probe: &mut impl Probe,
) -> Verdict {
    let at = |i: usize| Element::new(seq[i - 1], i);
    let cur = at(pos);
    if let IndexOrSentinel::Index(j) = lower {
        probe.count(Op::Comparison);
        if at(j).cmp(&cur) != Ordering::Less {
            return Verdict::TooLow;
        }
    }
    if let IndexOrSentinel::Index(j) = upper {
        probe.count(Op::Comparison);
        if cur.cmp(&at(j)) != Ordering::Less {
            return Verdict::TooHigh;
        }
    }
    Verdict::Fits
}

/// All windows of `text` order-isomorphic to the pattern, by increasing end.
pub fn search_prefix<T: Ord + Copy>(text: &[T], idx: &SinglePatternIndex<T>) -> Vec<MatchReport> {
    search_prefix_with(text, idx, &mut ())
}

pub fn search_prefix_with<T: Ord + Copy>(
    text: &[T],
    idx: &SinglePatternIndex<T>,
    probe: &mut impl Probe,
) -> Vec<MatchReport> {
    let (n, m) = (text.len(), idx.len());
    let mut found = Vec::new();
    if m > n {
        return found;
    }
    let (mu, pi, window) = (idx.mu.as_slice(), idx.pi.as_slice(), idx.window);
    let mut win = Window::new(text);
    let mut q = 0;
    for i in 1..=n {
        win.push(i, probe);
        let mut r = win.rank(i, probe);
        while q > 0 && r != mu[q] {
            let next = pi[q - 1];
            let deleted = win.retain_from(window_start(i, next, window), probe);
            probe.count(Op::FailTransition);
            probe.record(ScanEvent::Failure {
                position: i,
                from: q,
                to: next,
                deleted,
            });
            q = next;
            r = win.rank(i, probe);
        }
        probe.record(ScanEvent::Forward {
            position: i,
            from: q,
            to: q + 1,
            rank: Some(r),
        });
        q += 1;
        if q == m {
            let report = MatchReport::ending_at(0, i, m);
            probe.record(ScanEvent::Report(report));
            found.push(report);
            q = pi[m - 1];
        }
        win.retain_from(window_start(i + 1, q, window), probe);
    }
    found
}

/// Same matches as [`search_prefix`], without any tree operations.
pub fn search_nn<T: Ord + Copy>(text: &[T], idx: &SinglePatternIndex<T>) -> Vec<MatchReport> {
    search_nn_with(text, idx, &mut ())
}

pub fn search_nn_with<T: Ord + Copy>(
    text: &[T],
    idx: &SinglePatternIndex<T>,
    probe: &mut impl Probe,
) -> Vec<MatchReport> {
    let (n, m) = (text.len(), idx.len());
    let mut found = Vec::new();
    if m > n {
        return found;
    }
    let (nu, pi) = (&idx.nu, idx.pi.as_slice());
    let mut q = 0;
    for i in 1..=n {
        while q > 0 {
            let base = i - q;
            let lower = nu.prev[q].shifted(base);
            let upper = nu.next[q].shifted(base);
            let verdict = check_neighbors(text, i, lower, upper, probe);
            probe.record(ScanEvent::NeighborCheck {
                position: i,
                q,
                lower,
                upper,
                verdict,
            });
            if verdict == Verdict::Fits {
                break;
            }
            let next = pi[q - 1];
            probe.count(Op::FailTransition);
            probe.record(ScanEvent::Failure {
                position: i,
                from: q,
                to: next,
                deleted: q - next,
            });
            q = next;
        }
        probe.record(ScanEvent::Forward {
            position: i,
            from: q,
            to: q + 1,
            rank: None,
        });
        q += 1;
        if q == m {
            let report = MatchReport::ending_at(0, i, m);
            probe.record(ScanEvent::Report(report));
            found.push(report);
            q = pi[m - 1];
        }
    }
    found
}

/// Windowed search; `idx` must have been built with the same `k`.
pub fn search_windowed<T: Ord + Copy>(
    text: &[T],
    idx: &SinglePatternIndex<T>,
    k: usize,
) -> Result<Vec<MatchReport>> {
    if k == 0 {
        return Err(Error::ZeroWindow);
    }
    if idx.window != Some(k) {
        return Err(Error::WindowMismatch {
            built: idx.window,
            requested: k,
        });
    }
    Ok(search_prefix(text, idx))
}
