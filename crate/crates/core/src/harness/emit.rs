//! CSV and JSON writers for sweep results.

use std::fmt::Write as _;

use super::config::Output;
use super::sweep::{SweepResult, SweepRow};
use crate::{Error, Result};

pub const CSV_HEADER: &str = "axis,E_mf,E_ma,E_af,n_eff,class,max_real_part,stable";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (csv|json)")),
        }
    }
}

/// Twelve significant digits.
pub fn number(x: f64) -> String {
    format!("{x:.11e}")
}

fn csv_row(row: &SweepRow, outputs: &[Output], out: &mut String) {
    let want = |o: Output| outputs.contains(&o);
    let mut cells: Vec<String> = vec![number(row.axis)];
    match &row.report {
        Some(r) => {
            for (o, v) in [
                (Output::EMf, r.e_mf),
                (Output::EMa, r.e_ma),
                (Output::EAf, r.e_af),
                (Output::NEff, r.n_eff),
            ] {
                cells.push(if want(o) { number(v) } else { String::new() });
            }
            cells.push(if want(Output::Tripartite) {
                r.tripartite.class.to_string()
            } else {
                String::new()
            });
        }
        None => cells.extend(std::iter::repeat_n(String::new(), 5)),
    }
    cells.push(match row.max_real_part {
        Some(m) if want(Output::MaxRealPart) => number(m),
        _ => String::new(),
    });
    cells.push(row.stable.to_string());
    let _ = writeln!(out, "{}", cells.join(","));
}

/// One header line, one line per grid point, `\n` endings.
pub fn to_csv(result: &SweepResult) -> String {
    let mut out = String::with_capacity(128 * (result.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &result.rows {
        csv_row(row, result.outputs(), &mut out);
    }
    out
}

pub fn to_json(result: &SweepResult) -> Result<String> {
    let mut s =
        serde_json::to_string_pretty(result).map_err(|e| Error::Numerical(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn render(result: &SweepResult, format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(to_csv(result)),
        Format::Json => to_json(result),
    }
}
