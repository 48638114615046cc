//! Built-in golden checks on the worked examples.

use ordmatch::oracle::{naive_failure, naive_search};
use ordmatch::{
    build_failure_nn, build_failure_prefix, natural_rep, nn_rep, prefix_rep, search_multi_with,
    search_nn, search_prefix, AcAutomaton, IndexOrSentinel, MatchReport, OutputMode, ScanEvent,
    SinglePatternIndex, Trace,
};

pub const SAMPLE_PATTERN: [i64; 8] = [33, 42, 73, 57, 63, 87, 95, 79];
pub const SAMPLE_TEXT: [i64; 16] = [
    11, 15, 33, 21, 24, 50, 29, 36, 73, 85, 63, 69, 78, 88, 44, 62,
];

pub fn sample_patterns() -> Vec<Vec<i64>> {
    vec![
        vec![23, 35, 15, 53, 47],
        vec![66, 71, 57, 79, 84, 93],
        vec![43, 51, 62, 73],
    ]
}

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

pub fn run_all() -> Vec<Check> {
    type Golden = (&'static str, fn() -> bool);
    let checks: [Golden; 9] = [
        ("prefix representation", prefix_golden),
        ("natural representation", natural_golden),
        ("nearest-neighbor representation", nn_golden),
        ("failure function", failure_golden),
        ("single-pattern search", search_golden),
        ("multi-pattern prefix representations", multi_reps_golden),
        ("multi-pattern failure links", multi_fail_golden),
        ("multi-pattern scan transcript", multi_transcript_golden),
        ("multi-pattern self match", multi_self_match),
    ];
    checks
        .into_iter()
        .map(|(name, check)| Check {
            name,
            passed: check(),
        })
        .collect()
}

fn prefix_golden() -> bool {
    prefix_rep(&SAMPLE_PATTERN).as_slice() == [1, 2, 3, 3, 4, 6, 7, 6]
}

fn natural_golden() -> bool {
    natural_rep(&SAMPLE_PATTERN).as_slice() == [1, 2, 5, 3, 4, 7, 8, 6]
}

fn nn_golden() -> bool {
    use IndexOrSentinel::{Index as I, NegInfinity as N, PosInfinity as P};
    let nu = nn_rep(&SAMPLE_PATTERN);
    nu.prev == [N, I(1), I(2), I(2), I(4), I(3), I(6), I(3)]
        && nu.next == [P, P, P, I(3), I(3), P, P, I(6)]
}

fn failure_golden() -> bool {
    let expected = [0, 1, 2, 1, 2, 3, 3, 1];
    let p = &SAMPLE_PATTERN;
    build_failure_prefix(p, &prefix_rep(p)).is_ok_and(|f| f.as_slice() == expected)
        && build_failure_nn(p, &nn_rep(p)).is_ok_and(|f| f.as_slice() == expected)
        && naive_failure(p) == expected
}

fn search_golden() -> bool {
    let expected = vec![MatchReport {
        pattern_id: 0,
        start: 4,
        end: 11,
    }];
    let Ok(idx) = SinglePatternIndex::new(SAMPLE_PATTERN.to_vec()) else {
        return false;
    };
    search_prefix(&SAMPLE_TEXT, &idx) == expected
        && search_nn(&SAMPLE_TEXT, &idx) == expected
        && naive_search(&SAMPLE_TEXT, &SAMPLE_PATTERN) == expected
}

fn multi_reps_golden() -> bool {
    let reps: Vec<Vec<usize>> = sample_patterns()
        .iter()
        .map(|p| prefix_rep(p).into_vec())
        .collect();
    reps == [
        vec![1, 2, 1, 4, 4],
        vec![1, 2, 1, 4, 5, 6],
        vec![1, 2, 3, 4],
    ]
}

fn multi_fail_golden() -> bool {
    let Ok(ac) = AcAutomaton::new(sample_patterns()) else {
        return false;
    };
    let fail_of = |labels: &[usize]| ac.find(labels).map(|s| ac.labels(ac.state(s).fail));
    fail_of(&[1, 2, 1, 4]) == Some(vec![1, 2])
        && fail_of(&[1, 2, 1, 4, 4]) == Some(vec![1])
        && fail_of(&[1, 2, 1, 4, 5]) == Some(vec![1, 2, 3])
}

/// Reading (20, 30, 10, 15): at the fourth value the automaton sits in
/// (1,2,1), fails to (1) dropping two values, then moves to (1,2) on rank 2.
fn multi_transcript_golden() -> bool {
    let Ok(ac) = AcAutomaton::new(sample_patterns()) else {
        return false;
    };
    let mut trace = Trace::default();
    search_multi_with(&[20, 30, 10, 15], &ac, OutputMode::LongestOnly, &mut trace);
    let at4: Vec<String> = trace
        .events
        .iter()
        .filter_map(|e| match *e {
            ScanEvent::Failure {
                position: 4,
                from,
                to,
                deleted,
            } => Some(format!(
                "fail {:?}->{:?} -{deleted}",
                ac.labels(from),
                ac.labels(to)
            )),
            ScanEvent::Forward {
                position: 4,
                from,
                to,
                rank,
            } => Some(format!(
                "goto {:?}->{:?} r{rank:?}",
                ac.labels(from),
                ac.labels(to)
            )),
            _ => None,
        })
        .collect();
    at4 == [
        "fail [1, 2, 1]->[1] -2".to_string(),
        "goto [1]->[1, 2] rSome(2)".to_string(),
    ]
}

fn multi_self_match() -> bool {
    let Ok(ac) = AcAutomaton::new(sample_patterns()) else {
        return false;
    };
    search_multi_with(&sample_patterns()[0], &ac, OutputMode::LongestOnly, &mut ()).contains(
        &MatchReport {
            pattern_id: 0,
            start: 1,
            end: 5,
        },
    )
}
