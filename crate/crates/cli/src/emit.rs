//! Plot-ready tables. Numbers carry 12 significant digits in both formats.

use crate::error::{CliError, Result};
use crate::run::RunReport;
use serde_json::Value;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

pub const CSV_HEADER: [&str; 5] = ["param", "value_N", "abs_error_N", "n_zero_N", "n_terms"];

fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Round to 12 significant digits the same way the CSV writer does.
pub fn round12(x: f64) -> f64 {
    if x.is_finite() {
        sig12(x).parse().unwrap_or(x)
    } else {
        x
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

pub fn write_csv<W: Write>(report: &RunReport, out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &report.records {
        w.write_record([
            opt(r.param),
            opt(r.value),
            opt(r.abs_error),
            opt(r.n_zero),
            r.n_terms.map(|n| n.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn round_tree(v: &mut Value) {
    match v {
        Value::Number(n) if !(n.is_u64() || n.is_i64()) => {
            if let Some(x) = n.as_f64() {
                if let Some(r) = serde_json::Number::from_f64(round12(x)) {
                    *n = r;
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_tree),
        Value::Object(o) => o.values_mut().for_each(round_tree),
        _ => {}
    }
}

pub fn to_json(report: &RunReport) -> Result<String> {
    let mut v = serde_json::to_value(report).map_err(|e| CliError::Serialize(e.to_string()))?;
    round_tree(&mut v);
    serde_json::to_string_pretty(&v).map_err(|e| CliError::Serialize(e.to_string()))
}

pub fn render(report: &RunReport, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(report, &mut buf).map_err(|e| CliError::Serialize(e.to_string()))?;
            Ok(buf)
        }
        Format::Json => {
            let mut s = to_json(report)?;
            s.push('\n');
            Ok(s.into_bytes())
        }
    }
}

/// Write to `dest`, or stdout when `None`.
pub fn emit(report: &RunReport, format: Format, dest: Option<&Path>) -> Result<()> {
    let bytes = render(report, format)?;
    match dest {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::io(p, e)),
        None => std::io::stdout()
            .lock()
            .write_all(&bytes)
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}
