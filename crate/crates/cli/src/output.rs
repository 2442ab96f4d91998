//! Rendering for the table, json, and csv output formats.
//!
//! Exact rationals are always serialized as `num/den` strings so they
//! round-trip losslessly; `--digits` adds a correctly rounded (half-to-even)
//! decimal rendering next to them. The json envelope is a stable contract:
//! `{command, params, results, meta: {tool_version, seed?}}`.

use clap::ValueEnum;
use num::{BigInt, Integer as _, Signed, Zero};
use serde::Serialize;
use serde_json::{Map, Value};
use wheelwalk_core::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Serialize)]
struct Meta {
    tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    params: &'a Map<String, Value>,
    results: &'a [Value],
    meta: Meta,
}

/// Everything one command produced, ready to render in any format.
pub struct CommandOutput {
    pub command: &'static str,
    pub params: Map<String, Value>,
    /// Recorded in `meta` only when the command consumed randomness.
    pub seed: Option<u64>,
    pub json_results: Vec<Value>,
    pub table_header: Vec<&'static str>,
    pub table_rows: Vec<Vec<String>>,
    /// Single-scalar shortcut: table format prints just this line.
    pub bare: Option<String>,
}

impl CommandOutput {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => {
                if let Some(bare) = &self.bare {
                    let mut s = bare.clone();
                    s.push('\n');
                    s
                } else {
                    render_table(&self.table_header, &self.table_rows)
                }
            }
            OutputFormat::Csv => {
                let mut s = String::new();
                for row in &self.table_rows {
                    let escaped: Vec<String> = row.iter().map(|c| csv_escape(c)).collect();
                    s.push_str(&escaped.join(","));
                    s.push('\n');
                }
                s
            }
            OutputFormat::Json => {
                let envelope = Envelope {
                    command: self.command,
                    params: &self.params,
                    results: &self.json_results,
                    meta: Meta {
                        tool_version: env!("CARGO_PKG_VERSION").to_string(),
                        seed: self.seed,
                    },
                };
                let mut s = serde_json::to_string_pretty(&envelope)
                    .expect("envelope serialization cannot fail");
                s.push('\n');
                s
            }
        }
    }
}

fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut s = String::new();
    let mut push_row = |cells: &[String]| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            if i + 1 == cols {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{cell:<width$}", width = widths[i]));
            }
        }
        s.push_str(line.trim_end());
        s.push('\n');
    };
    push_row(&header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in rows {
        push_row(row);
    }
    s
}

fn csv_escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// Canonical exact rendering: always `num/den`, even for integer values.
pub fn exact_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering with `digits` fractional digits, rounded half-to-even.
pub fn decimal_string(r: &Rational, digits: u32) -> String {
    let negative = r.is_negative();
    let numer = r.numer().abs();
    let denom = r.denom().clone();
    let scale = BigInt::from(10u32).pow(digits);
    let (mut q, rem) = (numer * &scale).div_rem(&denom);
    // round half to even on the discarded remainder
    let twice = &rem * 2;
    if twice > denom || (twice == denom && q.is_odd()) {
        q += 1;
    }
    let (int_part, frac_part) = q.div_rem(&scale);
    let sign = if negative && !(int_part.is_zero() && frac_part.is_zero()) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part.to_string(),
            width = digits as usize
        )
    }
}
