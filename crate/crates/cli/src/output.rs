//! Report plumbing: the embedded run configuration, output formats, and
//! the text/csv renderings of the JSON reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Self-contained report object, pretty-printed.
    Json,
    /// Indented key/value rendering of the same data.
    Text,
    /// The report's tabular slice, prefixed with the config as a comment.
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
            Format::Csv => "csv",
        }
    }
}

/// Echo of the exact inputs a run used; embedded in every report so that
/// any output can be reproduced from the report alone.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<&'static str>,
    pub bounds: BTreeMap<&'static str, i64>,
    pub seed: u64,
    pub format: &'static str,
}

impl RunConfig {
    pub fn new(command: &'static str, seed: u64, format: Format) -> Self {
        RunConfig {
            command,
            model: None,
            orientation: None,
            bounds: BTreeMap::new(),
            seed,
            format: format.name(),
        }
    }
}

/// Tabular slice of a report, for `--format csv`.
pub struct CsvTable {
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<String>>,
}

/// What a subcommand produced: the full report, whether a verification
/// inside it failed (exit 1), and the optional csv slice.
pub struct Outcome {
    pub report: Value,
    pub failed: bool,
    pub csv: Option<CsvTable>,
}

impl Outcome {
    pub fn new(report: &impl Serialize, failed: bool, csv: Option<CsvTable>) -> Result<Outcome> {
        Ok(Outcome {
            report: serde_json::to_value(report)?,
            failed,
            csv,
        })
    }
}

pub fn emit(format: Format, outcome: &Outcome) -> Result<String> {
    match format {
        Format::Json => Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(&outcome.report)?
        )),
        Format::Text => Ok(render_text(&outcome.report)),
        Format::Csv => {
            let Some(table) = &outcome.csv else {
                bail!("csv output is not defined for this command; use json or text");
            };
            let mut out = String::new();
            let config = outcome
                .report
                .get("config")
                .cloned()
                .unwrap_or(Value::Null);
            writeln!(out, "# config {}", serde_json::to_string(&config)?)?;
            writeln!(out, "{}", table.header.join(","))?;
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
            Ok(out)
        }
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Human rendering of a report value: nested `key: value` lines, arrays
/// as dashed items. Purely a view; the JSON report is the source of truth.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render_value(value, 0, &mut out);
    out
}

fn render_value(value: &Value, indent: usize, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                render_entry(key, v, indent, out);
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_scalar(item) {
                    line(indent, &format!("- {}", scalar_text(item)), out);
                } else {
                    line(indent, "-", out);
                    render_value(item, indent + 1, out);
                }
            }
        }
        other => line(indent, &scalar_text(other), out),
    }
}

fn render_entry(key: &str, value: &Value, indent: usize, out: &mut String) {
    match value {
        v if is_scalar(v) => line(indent, &format!("{key}: {}", scalar_text(v)), out),
        Value::Array(items) if items.is_empty() => line(indent, &format!("{key}: []"), out),
        Value::Object(map) if map.is_empty() => line(indent, &format!("{key}: {{}}"), out),
        nested => {
            line(indent, &format!("{key}:"), out);
            render_value(nested, indent + 1, out);
        }
    }
}

fn is_scalar(value: &Value) -> bool {
    !matches!(value, Value::Object(_) | Value::Array(_))
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn line(indent: usize, text: &str, out: &mut String) {
    for _ in 0..indent {
        out.push_str("  ");
    }
    out.push_str(text);
    out.push('\n');
}
