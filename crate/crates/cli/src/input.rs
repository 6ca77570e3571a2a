//! Parsing of distributions and number lists from the command line.

use std::path::{Path, PathBuf};

use pairlaw_core::Distribution;

use crate::CliError;

fn parse_list(s: &str) -> Option<Vec<f64>> {
    s.split(',').map(|t| t.trim().parse::<f64>().ok()).collect()
}

/// Comma-separated reals, or else a path to a file holding one real per
/// line (blank lines and `#` comments are skipped).
pub fn read_probabilities(arg: &str) -> Result<Vec<f64>, CliError> {
    if let Some(v) = parse_list(arg) {
        return Ok(v);
    }
    let path = Path::new(arg);
    if !path.exists() && arg.contains(',') {
        return Err(CliError::Parse(format!("not a list of numbers: {arg}")));
    }
    read_column(path)
}

pub fn read_column(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: PathBuf::from(path),
        source,
    })?;
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            l.parse::<f64>().map_err(|_| {
                CliError::Parse(format!("{}:{}: not a number: {l}", path.display(), i + 1))
            })
        })
        .collect()
}

pub fn read_distribution(arg: &str) -> Result<Distribution, CliError> {
    Ok(Distribution::new(read_probabilities(arg)?)?)
}

/// Comma-separated non-negative integers.
pub fn parse_counts(arg: &str) -> Result<Vec<u64>, CliError> {
    arg.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>()
                .or_else(|_| parse_integral_real(t))
                .map_err(|_| CliError::Parse(format!("not a non-negative integer: {t}")))
        })
        .collect()
}

/// Accepts forms like `1e4` for integers.
fn parse_integral_real(t: &str) -> Result<u64, ()> {
    let v: f64 = t.parse().map_err(|_| ())?;
    if v >= 0.0 && v.fract() == 0.0 && v < u64::MAX as f64 {
        Ok(v as u64)
    } else {
        Err(())
    }
}
