//! Reading numeric sequences from plain or CSV input.

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use ordered_float::NotNan;
use rust_decimal::Decimal;

use crate::CliError;

/// A value type the CLI can read. Binary floating point is the default;
/// `--exact` switches to decimal arithmetic.
pub trait Value: Ord + Copy + Send + Sync + fmt::Debug + fmt::Display + 'static {
    fn parse_token(token: &str) -> Option<Self>;
}

impl Value for NotNan<f64> {
    fn parse_token(token: &str) -> Option<Self> {
        token.parse::<f64>().ok().and_then(|v| NotNan::new(v).ok())
    }
}

impl Value for Decimal {
    fn parse_token(token: &str) -> Option<Self> {
        Decimal::from_str(token)
            .or_else(|_| Decimal::from_scientific(token))
            .ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    /// Whitespace or newline separated numbers.
    #[default]
    Plain,
    /// One record per line; the given 1-based column is extracted.
    Csv(usize),
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "plain" {
            return Ok(Format::Plain);
        }
        let col = s
            .strip_prefix("csv:")
            .ok_or_else(|| format!("unknown format `{s}` (expected plain or csv:<column>)"))?;
        match col.parse::<usize>() {
            Ok(c) if c >= 1 => Ok(Format::Csv(c)),
            _ => Err(format!(
                "csv column must be a positive integer, got `{col}`"
            )),
        }
    }
}

/// Reads a sequence in input order. `source` names the input in errors.
pub fn parse_sequence<V: Value>(
    input: impl BufRead,
    format: Format,
    source: &str,
) -> Result<Vec<V>, CliError> {
    match format {
        Format::Plain => parse_plain(input, source),
        Format::Csv(col) => parse_csv(input, col, source),
    }
}

fn parse_plain<V: Value>(input: impl BufRead, source: &str) -> Result<Vec<V>, CliError> {
    let mut values = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line.map_err(|e| CliError::io(source, e))?;
        for token in line.split_whitespace() {
            values.push(parse_one(token, source, n + 1)?);
        }
    }
    Ok(values)
}

fn parse_csv<V: Value>(input: impl BufRead, col: usize, source: &str) -> Result<Vec<V>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input);
    let mut values = Vec::new();
    let mut first = true;
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Parse {
            origin: source.to_string(),
            line: e.position().map_or(0, |p| p.line() as usize),
            token: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        let field = record
            .get(col - 1)
            .map(str::trim)
            .ok_or_else(|| CliError::MissingColumn {
                origin: source.to_string(),
                line,
                column: col,
            })?;
        match V::parse_token(field) {
            Some(v) => values.push(v),
            // a non-numeric first record is a header
            None if first => {}
            None => {
                return Err(CliError::Parse {
                    origin: source.to_string(),
                    line,
                    token: field.to_string(),
                })
            }
        }
        first = false;
    }
    Ok(values)
}

fn parse_one<V: Value>(token: &str, source: &str, line: usize) -> Result<V, CliError> {
    V::parse_token(token).ok_or_else(|| CliError::Parse {
        origin: source.to_string(),
        line,
        token: token.to_string(),
    })
}

/// One pattern per non-blank line, values whitespace separated.
pub fn parse_pattern_lines<V: Value>(
    input: impl BufRead,
    source: &str,
) -> Result<Vec<Vec<V>>, CliError> {
    let mut patterns = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line.map_err(|e| CliError::io(source, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let pattern = line
            .split_whitespace()
            .map(|t| parse_one(t, source, n + 1))
            .collect::<Result<Vec<V>, _>>()?;
        patterns.push(pattern);
    }
    Ok(patterns)
}
