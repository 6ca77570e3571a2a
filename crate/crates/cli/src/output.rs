//! Output envelope and its CSV and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Significant digits used for reals in CSV.
pub const CSV_SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Null,
    UInt(u64),
    Real(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::UInt(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::UInt(v as u64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(if v { "true" } else { "false" }.to_owned())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Results {
    Table {
        columns: Vec<String>,
        rows: Vec<Vec<Cell>>,
    },
    Scalar {
        name: String,
        value: Cell,
    },
}

impl Results {
    pub fn table(columns: &[&str]) -> Self {
        Results::Table {
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row to a table; panics on a scalar or a width mismatch.
    pub fn push(&mut self, row: Vec<Cell>) {
        match self {
            Results::Table { columns, rows } => {
                assert_eq!(row.len(), columns.len(), "row width");
                rows.push(row);
            }
            Results::Scalar { .. } => panic!("push on scalar results"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: Option<u64>,
    pub tolerances: BTreeMap<String, f64>,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub parameters: BTreeMap<String, Cell>,
    pub results: Results,
    pub provenance: Provenance,
}

impl OutputEnvelope {
    pub fn new(command: &str, results: Results) -> Self {
        Self {
            command: command.to_owned(),
            parameters: BTreeMap::new(),
            results,
            provenance: Provenance {
                seed: None,
                tolerances: BTreeMap::new(),
                version: env!("CARGO_PKG_VERSION").to_owned(),
            },
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.parameters.insert(key.to_owned(), value.into());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.provenance.seed = Some(seed);
        self
    }

    pub fn tolerance(mut self, key: &str, value: f64) -> Self {
        self.provenance.tolerances.insert(key.to_owned(), value);
        self
    }

    /// Pretty JSON. Reals use the shortest representation that parses back
    /// to the same `f64`.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Header row plus data rows, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.results {
            Results::Table { columns, rows } => {
                write_row(&mut out, columns.iter().map(|c| csv_text(c)));
                for row in rows {
                    write_row(&mut out, row.iter().map(csv_cell));
                }
            }
            Results::Scalar { name, value } => {
                write_row(&mut out, std::iter::once(csv_text(name)));
                write_row(&mut out, std::iter::once(csv_cell(value)));
            }
        }
        out
    }
}

fn write_row(out: &mut String, cells: impl Iterator<Item = String>) {
    for (i, c) in cells.enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&c);
    }
    out.push('\n');
}

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Null => String::new(),
        Cell::UInt(v) => v.to_string(),
        Cell::Real(v) => format_significant(*v, CSV_SIGNIFICANT_DIGITS),
        Cell::Text(s) => csv_text(s),
    }
}

/// `%g`-style formatting with `digits` significant digits and trailing
/// zeros removed.
pub fn format_significant(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".to_owned();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if exp < -5 || exp >= digits as i32 {
        let mut s = trim_zeros(mantissa).to_owned();
        let _ = write!(s, "e{exp}");
        return s;
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_owned()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
