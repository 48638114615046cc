//! Text rendering of a pattern's representations, and the reverse.
//!
//! ```text
//! mu      1 2 3 3 4 6 7 6
//! sigma   1 2 5 3 4 7 8 6
//! nu_p    -inf 1 2 2 4 3 6 3
//! nu_n    inf inf inf 3 3 inf inf 6
//! pi      0 1 2 1 2 3 3 1
//! ```
//!
//! Labels and values are tab separated from each other; values within a row
//! are space separated.

use std::fmt::Write as _;

use ordmatch::{
    natural_rep, FailureFunction, IndexOrSentinel, NaturalRep, NearestNeighborRep, PrefixRep,
    SinglePatternIndex,
};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DumpRows {
    pub mu: PrefixRep,
    pub sigma: NaturalRep,
    pub nu: NearestNeighborRep,
    pub pi: FailureFunction,
}

impl DumpRows {
    pub fn of<T: Ord + Copy>(idx: &SinglePatternIndex<T>) -> Self {
        DumpRows {
            mu: idx.prefix_rep().clone(),
            sigma: natural_rep(idx.pattern()),
            nu: idx.nn_rep().clone(),
            pi: idx.failure().clone(),
        }
    }

    pub fn render(&self) -> String {
        fn row<I: IntoIterator<Item = String>>(out: &mut String, label: &str, items: I) {
            let items: Vec<String> = items.into_iter().collect();
            let _ = writeln!(out, "{label}\t{}", items.join(" "));
        }
        let mut out = String::new();
        row(&mut out, "mu", self.mu.iter().map(usize::to_string));
        row(&mut out, "sigma", self.sigma.iter().map(usize::to_string));
        row(
            &mut out,
            "nu_p",
            self.nu.prev.iter().map(ToString::to_string),
        );
        row(
            &mut out,
            "nu_n",
            self.nu.next.iter().map(ToString::to_string),
        );
        row(&mut out, "pi", self.pi.iter().map(usize::to_string));
        out
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut mu = None;
        let mut sigma = None;
        let mut prev = None;
        let mut next = None;
        let mut pi = None;
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |token: &str| CliError::Parse {
                origin: "dump".into(),
                line: n + 1,
                token: token.to_string(),
            };
            let (label, rest) = line.split_once('\t').unwrap_or((line.trim(), ""));
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            let numbers = || {
                tokens
                    .iter()
                    .map(|t| t.parse::<usize>().map_err(|_| bad(t)))
                    .collect::<Result<Vec<_>, _>>()
            };
            let bounds = || {
                tokens
                    .iter()
                    .map(|t| parse_bound(t).ok_or_else(|| bad(t)))
                    .collect::<Result<Vec<_>, _>>()
            };
            match label {
                "mu" => mu = Some(PrefixRep::new(numbers()?)?),
                "sigma" => sigma = Some(NaturalRep::new(numbers()?)?),
                "nu_p" => prev = Some(bounds()?),
                "nu_n" => next = Some(bounds()?),
                "pi" => pi = Some(FailureFunction::new(numbers()?)?),
                other => return Err(bad(other)),
            }
        }
        let missing = |row: &str| CliError::Usage(format!("dump is missing the {row} row"));
        Ok(DumpRows {
            mu: mu.ok_or_else(|| missing("mu"))?,
            sigma: sigma.ok_or_else(|| missing("sigma"))?,
            nu: NearestNeighborRep {
                prev: prev.ok_or_else(|| missing("nu_p"))?,
                next: next.ok_or_else(|| missing("nu_n"))?,
            },
            pi: pi.ok_or_else(|| missing("pi"))?,
        })
    }
}

fn parse_bound(token: &str) -> Option<IndexOrSentinel> {
    match token {
        "-inf" => Some(IndexOrSentinel::NegInfinity),
        "inf" | "+inf" => Some(IndexOrSentinel::PosInfinity),
        t => t.parse().ok().map(IndexOrSentinel::Index),
    }
}
