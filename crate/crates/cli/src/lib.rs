//! Command-line front end for `ordmatch`.
//!
//! ```text
//! ordmatch search  --pattern p.txt --text t.txt [--algorithm kmp-nn] [--last-k K]
//! ordmatch msearch --patterns ps.txt --text t.txt [--algorithm ac] [--report-all]
//! ordmatch dump    --pattern p.txt
//! ordmatch selftest
//! ```
//!
//! Matches go to standard output, one per line (`start<TAB>end`, or
//! `pattern<TAB>start<TAB>end` for `msearch`), everything else to standard
//! error. Exit status is 0 when something matched (or a dump/selftest
//! succeeded), 1 when nothing matched, 2 on usage or input errors.

pub mod dump;
pub mod input;
pub mod selftest;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordered_float::NotNan;
use ordmatch::oracle::{naive_multi, naive_search, naive_search_windowed};
use ordmatch::{
    search_multi_with, search_nn_with, search_prefix_with, AcAutomaton, MatchReport, OpCounters,
    OutputMode, SinglePatternIndex,
};
use rust_decimal::Decimal;
use thiserror::Error;

pub use dump::DumpRows;
pub use input::{parse_pattern_lines, parse_sequence, Format, Value};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}: line {line}: cannot parse `{token}` as a number")]
    Parse {
        origin: String,
        line: usize,
        token: String,
    },

    #[error("{origin}: line {line}: no column {column}")]
    MissingColumn {
        origin: String,
        line: usize,
        column: usize,
    },

    #[error("{origin}: {message}")]
    Io { origin: String, message: String },

    #[error("{origin}: value {value} repeats at positions {first} and {second}")]
    Duplicate {
        origin: String,
        value: String,
        first: usize,
        second: usize,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] ordmatch::Error),

    #[error("comparison budget exceeded: {comparisons} comparisons for {len} text values")]
    BudgetExceeded { comparisons: u64, len: usize },
}

impl CliError {
    fn io(source: &str, err: io::Error) -> Self {
        CliError::Io {
            origin: source.to_string(),
            message: err.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Rank-based KMP scan over an order-statistic tree
    KmpPrefix,
    /// Comparison-only KMP scan over nearest neighbors
    KmpNn,
    /// Aho–Corasick automaton (msearch only)
    Ac,
    /// Brute force over every window
    Naive,
}

#[derive(Debug, Parser)]
#[command(
    name = "ordmatch",
    version,
    about = "Order-preserving matching on numeric sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find windows of the text(s) with the same relative order as one pattern
    Search(SearchArgs),
    /// Find windows matching any of several patterns
    Msearch(MsearchArgs),
    /// Print the representations and failure function of a pattern
    Dump(DumpArgs),
    /// Run the built-in golden checks
    Selftest,
}

#[derive(Debug, Args)]
pub struct PatternArgs {
    /// Pattern file, or `-` for standard input
    #[arg(
        long,
        value_name = "FILE|-",
        required_unless_present = "pattern_values"
    )]
    pub pattern: Option<String>,
    /// Pattern given inline, e.g. "33 42 73 57"
    #[arg(long, value_name = "VALUES", conflicts_with = "pattern")]
    pub pattern_values: Option<String>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input format of the text and pattern files
    #[arg(long, default_value = "plain", value_name = "plain|csv:<col>")]
    pub format: Format,
    /// Parse numbers as exact decimals instead of binary floating point
    #[arg(long)]
    pub exact: bool,
    /// Reject texts and patterns that contain a repeated value
    #[arg(long)]
    pub strict_distinct: bool,
    /// Print operation counters to standard error
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Args)]
pub struct TextArgs {
    /// Text file, or `-` for standard input; repeat for several files
    #[arg(long = "text", value_name = "FILE|-", required = true)]
    pub texts: Vec<String>,
    /// Worker threads used when several texts are given
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub pattern: PatternArgs,
    #[command(flatten)]
    pub text: TextArgs,
    #[arg(long, value_enum, default_value = "kmp-nn")]
    pub algorithm: Algorithm,
    /// Only relate each value to its last K predecessors
    #[arg(long, value_name = "K")]
    pub last_k: Option<usize>,
    /// Also print the pattern dump to standard error
    #[arg(long)]
    pub dump: bool,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct MsearchArgs {
    /// File with one pattern per line
    #[arg(long, value_name = "FILE")]
    pub patterns: String,
    #[command(flatten)]
    pub text: TextArgs,
    #[arg(long, value_enum, default_value = "ac")]
    pub algorithm: Algorithm,
    /// Report every pattern ending at a position, not just the longest
    #[arg(long)]
    pub report_all: bool,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[command(flatten)]
    pub pattern: PatternArgs,
    #[arg(long, value_name = "K")]
    pub last_k: Option<usize>,
    #[arg(long, default_value = "plain", value_name = "plain|csv:<col>")]
    pub format: Format,
    #[arg(long)]
    pub exact: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Search,
    Msearch,
    Dump,
    Selftest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternSource {
    Path(String),
    Inline(String),
}

/// A validated invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub algorithm: Algorithm,
    pub pattern_source: Option<PatternSource>,
    pub patterns_file: Option<String>,
    pub text_sources: Vec<String>,
    pub window_k: Option<usize>,
    pub report_all: bool,
    pub strict_distinct: bool,
    pub show_stats: bool,
    pub dump: bool,
    pub format: Format,
    pub exact: bool,
    pub jobs: usize,
}

impl RunConfig {
    fn base(command: CommandKind, algorithm: Algorithm) -> Self {
        RunConfig {
            command,
            algorithm,
            pattern_source: None,
            patterns_file: None,
            text_sources: Vec::new(),
            window_k: None,
            report_all: false,
            strict_distinct: false,
            show_stats: false,
            dump: false,
            format: Format::Plain,
            exact: false,
            jobs: 1,
        }
    }
}

fn pattern_source(args: PatternArgs) -> Option<PatternSource> {
    args.pattern
        .map(PatternSource::Path)
        .or(args.pattern_values.map(PatternSource::Inline))
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self, CliError> {
        let config = match cli.command {
            Command::Search(a) => {
                if a.algorithm == Algorithm::Ac {
                    return Err(CliError::Usage(
                        "the ac algorithm is only available with msearch".into(),
                    ));
                }
                RunConfig {
                    pattern_source: pattern_source(a.pattern),
                    text_sources: a.text.texts,
                    window_k: a.last_k,
                    strict_distinct: a.input.strict_distinct,
                    show_stats: a.input.stats,
                    dump: a.dump,
                    format: a.input.format,
                    exact: a.input.exact,
                    jobs: a.text.jobs,
                    ..RunConfig::base(CommandKind::Search, a.algorithm)
                }
            }
            Command::Msearch(a) => {
                if matches!(a.algorithm, Algorithm::KmpPrefix | Algorithm::KmpNn) {
                    return Err(CliError::Usage(
                        "msearch supports the ac and naive algorithms".into(),
                    ));
                }
                RunConfig {
                    patterns_file: Some(a.patterns),
                    text_sources: a.text.texts,
                    report_all: a.report_all,
                    strict_distinct: a.input.strict_distinct,
                    show_stats: a.input.stats,
                    format: a.input.format,
                    exact: a.input.exact,
                    jobs: a.text.jobs,
                    ..RunConfig::base(CommandKind::Msearch, a.algorithm)
                }
            }
            Command::Dump(a) => RunConfig {
                pattern_source: pattern_source(a.pattern),
                window_k: a.last_k,
                format: a.format,
                exact: a.exact,
                ..RunConfig::base(CommandKind::Dump, Algorithm::KmpPrefix)
            },
            Command::Selftest => RunConfig::base(CommandKind::Selftest, Algorithm::Naive),
        };
        if config.window_k == Some(0) {
            return Err(CliError::Usage("--last-k must be at least 1".into()));
        }
        if config.jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        let stdin_users = config.text_sources.iter().filter(|t| *t == "-").count()
            + usize::from(config.pattern_source == Some(PatternSource::Path("-".into())));
        if stdin_users > 1 {
            return Err(CliError::Usage(
                "standard input can feed only one of --pattern/--text".into(),
            ));
        }
        Ok(config)
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run_from_args<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                2
            } else {
                let _ = write!(stdout, "{rendered}");
                0
            };
        }
    };
    match RunConfig::try_from(cli).and_then(|config| run(&config, stdin, stdout, stderr)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

/// Runs a validated configuration; `Ok` carries the exit status.
pub fn run(
    config: &RunConfig,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let mut io = Io {
        stdin,
        stdout,
        stderr,
    };
    if config.command == CommandKind::Selftest {
        return selftest_command(&mut io);
    }
    if config.exact {
        Runner::<Decimal>::new(config).execute(&mut io)
    } else {
        Runner::<NotNan<f64>>::new(config).execute(&mut io)
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, source: &str) -> Result<Vec<u8>, CliError> {
        if source == "-" {
            let mut buf = Vec::new();
            self.stdin
                .read_to_end(&mut buf)
                .map_err(|e| CliError::io("<stdin>", e))?;
            Ok(buf)
        } else {
            std::fs::read(source).map_err(|e| CliError::io(source, e))
        }
    }

    fn out(&mut self, line: &str) -> Result<(), CliError> {
        writeln!(self.stdout, "{line}").map_err(|e| CliError::io("<stdout>", e))
    }

    fn err(&mut self, line: &str) -> Result<(), CliError> {
        writeln!(self.stderr, "{line}").map_err(|e| CliError::io("<stderr>", e))
    }
}

fn selftest_command(io: &mut Io<'_>) -> Result<i32, CliError> {
    let checks = selftest::run_all();
    for check in &checks {
        let status = if check.passed { "ok" } else { "FAILED" };
        io.out(&format!("{status}\t{}", check.name))?;
    }
    Ok(if checks.iter().all(|c| c.passed) {
        0
    } else {
        1
    })
}

fn check_distinct<V: Value>(values: &[V], source: &str) -> Result<(), CliError> {
    let mut seen: BTreeMap<V, usize> = BTreeMap::new();
    for (i, &v) in values.iter().enumerate() {
        if let Some(first) = seen.insert(v, i + 1) {
            return Err(CliError::Duplicate {
                origin: source.to_string(),
                value: v.to_string(),
                first,
                second: i + 1,
            });
        }
    }
    Ok(())
}

enum Matcher<V> {
    Single(SinglePatternIndex<V>),
    Multi {
        automaton: AcAutomaton<V>,
        patterns: Vec<Vec<V>>,
    },
}

struct Runner<'c, V> {
    config: &'c RunConfig,
    _value: std::marker::PhantomData<V>,
}

struct TextResult {
    name: String,
    len: usize,
    found: Vec<MatchReport>,
    counters: OpCounters,
}

impl<'c, V: Value> Runner<'c, V> {
    fn new(config: &'c RunConfig) -> Self {
        Runner {
            config,
            _value: std::marker::PhantomData,
        }
    }

    fn load_pattern(&self, io: &mut Io<'_>) -> Result<Vec<V>, CliError> {
        let pattern = match &self.config.pattern_source {
            Some(PatternSource::Path(path)) => {
                let bytes = io.read(path)?;
                parse_sequence(bytes.as_slice(), self.config.format, path)?
            }
            Some(PatternSource::Inline(values)) => {
                parse_sequence(values.as_bytes(), Format::Plain, "--pattern-values")?
            }
            None => return Err(CliError::Usage("no pattern given".into())),
        };
        if self.config.strict_distinct {
            check_distinct(&pattern, "pattern")?;
        }
        Ok(pattern)
    }

    fn index(&self, pattern: Vec<V>) -> Result<SinglePatternIndex<V>, CliError> {
        Ok(match self.config.window_k {
            Some(k) => SinglePatternIndex::windowed(pattern, k)?,
            None => SinglePatternIndex::new(pattern)?,
        })
    }

    fn execute(&self, io: &mut Io<'_>) -> Result<i32, CliError> {
        match self.config.command {
            CommandKind::Dump => {
                let idx = self.index(self.load_pattern(io)?)?;
                let text = DumpRows::of(&idx).render();
                write!(io.stdout, "{text}").map_err(|e| CliError::io("<stdout>", e))?;
                Ok(0)
            }
            CommandKind::Search => {
                let idx = self.index(self.load_pattern(io)?)?;
                if self.config.dump {
                    let text = DumpRows::of(&idx).render();
                    write!(io.stderr, "{text}").map_err(|e| CliError::io("<stderr>", e))?;
                }
                self.search_texts(io, &Matcher::Single(idx))
            }
            CommandKind::Msearch => {
                let path = self.config.patterns_file.as_deref().unwrap_or("-");
                let bytes = io.read(path)?;
                let patterns: Vec<Vec<V>> = parse_pattern_lines(bytes.as_slice(), path)?;
                if self.config.strict_distinct {
                    for (i, p) in patterns.iter().enumerate() {
                        check_distinct(p, &format!("pattern {}", i + 1))?;
                    }
                }
                let mut counters = OpCounters::new();
                let automaton = AcAutomaton::new_with(patterns.clone(), &mut counters)?;
                if self.config.show_stats && self.config.algorithm == Algorithm::Ac {
                    for (key, value) in counters.entries() {
                        io.err(&format!("build_{key}={value}"))?;
                    }
                }
                self.search_texts(
                    io,
                    &Matcher::Multi {
                        automaton,
                        patterns,
                    },
                )
            }
            CommandKind::Selftest => selftest_command(io),
        }
    }

    fn search_texts(&self, io: &mut Io<'_>, matcher: &Matcher<V>) -> Result<i32, CliError> {
        let mut inputs = Vec::with_capacity(self.config.text_sources.len());
        for source in &self.config.text_sources {
            inputs.push((source.clone(), io.read(source)?));
        }
        let jobs = self.config.jobs.min(inputs.len()).max(1);
        let results: Vec<Result<TextResult, CliError>> = if jobs == 1 {
            inputs
                .iter()
                .map(|(name, bytes)| self.search_one(name, bytes, matcher))
                .collect()
        } else {
            let chunk = inputs.len().div_ceil(jobs);
            std::thread::scope(|scope| {
                let handles: Vec<_> = inputs
                    .chunks(chunk)
                    .map(|part| {
                        scope.spawn(move || {
                            part.iter()
                                .map(|(name, bytes)| self.search_one(name, bytes, matcher))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("search worker panicked"))
                    .collect()
            })
        };

        let labelled = self.config.text_sources.len() > 1;
        let mut any = false;
        let mut total = OpCounters::new();
        let mut total_len = 0;
        for result in results {
            let result = result?;
            for m in &result.found {
                let line = match self.config.command {
                    CommandKind::Msearch => {
                        format!("{}\t{}\t{}", m.pattern_id + 1, m.start, m.end)
                    }
                    _ => format!("{}\t{}", m.start, m.end),
                };
                if labelled {
                    io.out(&format!("{}\t{line}", result.name))?;
                } else {
                    io.out(&line)?;
                }
            }
            any |= !result.found.is_empty();
            total_len += result.len;
            let c = result.counters;
            total.comparisons += c.comparisons;
            total.tree_inserts += c.tree_inserts;
            total.tree_deletes += c.tree_deletes;
            total.rank_queries += c.rank_queries;
            total.fail_transitions += c.fail_transitions;
        }
        if self.config.show_stats {
            io.err(&format!("text_len={total_len}"))?;
            for (key, value) in total.entries() {
                io.err(&format!("{key}={value}"))?;
            }
        }
        Ok(if any { 0 } else { 1 })
    }

    fn search_one(
        &self,
        name: &str,
        bytes: &[u8],
        matcher: &Matcher<V>,
    ) -> Result<TextResult, CliError> {
        let text: Vec<V> = parse_sequence(bytes, self.config.format, name)?;
        if self.config.strict_distinct {
            check_distinct(&text, name)?;
        }
        let mut counters = OpCounters::new();
        let found = match matcher {
            Matcher::Single(idx) => match (self.config.algorithm, idx.window()) {
                (Algorithm::KmpPrefix, _) => search_prefix_with(&text, idx, &mut counters),
                (Algorithm::KmpNn, _) => {
                    let found = search_nn_with(&text, idx, &mut counters);
                    if counters.comparisons > 4 * text.len() as u64 {
                        return Err(CliError::BudgetExceeded {
                            comparisons: counters.comparisons,
                            len: text.len(),
                        });
                    }
                    found
                }
                (Algorithm::Naive, None) => naive_search(&text, idx.pattern()),
                (Algorithm::Naive, Some(k)) => naive_search_windowed(&text, idx.pattern(), k),
                (Algorithm::Ac, _) => unreachable!("rejected during validation"),
            },
            Matcher::Multi {
                automaton,
                patterns,
            } => {
                let mode = if self.config.report_all {
                    OutputMode::ReportAll
                } else {
                    OutputMode::LongestOnly
                };
                match self.config.algorithm {
                    Algorithm::Naive => naive_multi(&text, patterns, mode),
                    _ => search_multi_with(&text, automaton, mode, &mut counters),
                }
            }
        };
        Ok(TextResult {
            name: name.to_string(),
            len: text.len(),
            found,
            counters,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_from_args(
            std::iter::once("ordmatch").chain(args.iter().copied()),
            &mut input,
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    const T: &str = "11 15 33 21 24 50 29 36 73 85 63 69 78 88 44 62";
    const P: &str = "33 42 73 57 63 87 95 79";

    #[test]
    fn search_from_stdin() {
        for algo in ["kmp-prefix", "kmp-nn", "naive"] {
            let (code, out, _) = run_args(
                &[
                    "search",
                    "--pattern-values",
                    P,
                    "--text",
                    "-",
                    "--algorithm",
                    algo,
                ],
                T,
            );
            assert_eq!((code, out.as_str()), (0, "4\t11\n"), "{algo}");
        }
    }

    #[test]
    fn pattern_longer_than_text_exits_one() {
        let (code, out, _) = run_args(&["search", "--pattern-values", P, "--text", "-"], "1 2");
        assert_eq!((code, out.as_str()), (1, ""));
    }

    #[test]
    fn no_match_exits_one() {
        let (code, out, _) = run_args(&["search", "--pattern-values", P, "--text", "-"], "1 2 3");
        assert_eq!((code, out.as_str()), (1, ""));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["search", "--text", "-"], "").0, 2);
        assert_eq!(run_args(&["frobnicate"], "").0, 2);
        let (code, _, err) = run_args(
            &[
                "search",
                "--pattern-values",
                P,
                "--text",
                "-",
                "--algorithm",
                "ac",
            ],
            T,
        );
        assert_eq!(code, 2);
        assert!(err.contains("msearch"));
        assert_eq!(
            run_args(&["search", "--pattern", "-", "--text", "-"], T).0,
            2
        );
        assert_eq!(
            run_args(
                &[
                    "search",
                    "--pattern-values",
                    P,
                    "--text",
                    "-",
                    "--last-k",
                    "0"
                ],
                T
            )
            .0,
            2
        );
    }

    #[test]
    fn parse_error_goes_to_stderr() {
        let (code, out, err) = run_args(&["search", "--pattern-values", P, "--text", "-"], "1 2 x");
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("`x`"), "{err}");
    }

    #[test]
    fn strict_distinct_rejects_repeats() {
        let (code, _, err) = run_args(
            &[
                "search",
                "--pattern-values",
                "1 2",
                "--text",
                "-",
                "--strict-distinct",
            ],
            "5 6 7 5",
        );
        assert_eq!(code, 2);
        assert!(err.contains("positions 1 and 4"), "{err}");
        let (code, out, _) = run_args(
            &[
                "search",
                "--pattern-values",
                "1 2",
                "--text",
                "-",
                "--strict-distinct",
            ],
            "5 6 4",
        );
        assert_eq!((code, out.as_str()), (0, "1\t2\n"));
        // without the flag repeats are fine
        let (code, _, _) = run_args(
            &["search", "--pattern-values", "1 2", "--text", "-"],
            "5 6 5",
        );
        assert_eq!(code, 0);
        let (code, _, _) = run_args(
            &[
                "search",
                "--pattern-values",
                "1 1",
                "--text",
                "-",
                "--strict-distinct",
            ],
            "5 6",
        );
        assert_eq!(code, 2);
    }

    #[test]
    fn stats_lines() {
        let (code, _, err) = run_args(
            &["search", "--pattern-values", P, "--text", "-", "--stats"],
            T,
        );
        assert_eq!(code, 0);
        assert!(err.lines().any(|l| l == "text_len=16"));
        assert!(err.lines().any(|l| l.starts_with("comparisons=")));
    }

    #[test]
    fn dump_command() {
        let (code, out, _) = run_args(&["dump", "--pattern-values", P], "");
        assert_eq!(code, 0);
        assert!(out.contains("pi\t0 1 2 1 2 3 3 1"));
    }

    #[test]
    fn exact_mode_searches_decimals() {
        let (code, out, _) = run_args(
            &[
                "search",
                "--pattern-values",
                "0.1 0.3 0.2",
                "--text",
                "-",
                "--exact",
            ],
            "1.10 1.30 1.20 1.25",
        );
        assert_eq!((code, out.as_str()), (0, "1\t3\n"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("msearch"));
    }
}
