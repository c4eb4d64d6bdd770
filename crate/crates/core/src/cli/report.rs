//! Report documents and their JSON, CSV and plain-text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use super::error::CliError;

pub const TOOL: &str = "modwzw";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// One checked invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Residual {
    pub fn new(value: f64, tolerance: f64) -> Residual {
        Residual {
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }

    /// A yes/no check, reported as residual 0 or 1.
    pub fn flag(ok: bool) -> Residual {
        Residual {
            value: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass: ok,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Table {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub tolerances: Value,
    pub result: Value,
    pub residuals: BTreeMap<String, Residual>,
    pub table: Table,
}

impl Report {
    pub fn failures(&self) -> Vec<&str> {
        self.residuals
            .iter()
            .filter(|(_, r)| !r.pass)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tool": TOOL,
            "version": VERSION,
            "command": self.command,
            "input": self.input,
            "tolerances": self.tolerances,
            "residuals": self.residuals,
            "result": self.result,
        })
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(json_text(&self.to_json())),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::new(super::ErrorCode::Io, e.to_string());
                w.write_record(&self.table.headers).map_err(io)?;
                for row in &self.table.rows {
                    w.write_record(row).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::new(super::ErrorCode::Io, e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
            Format::Pretty => Ok(self.pretty()),
        }
    }

    fn pretty(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{TOOL} {VERSION} {}", self.command);
        if let Some(obj) = self.input.as_object() {
            for (k, v) in obj {
                let _ = writeln!(out, "  {k}: {}", scalar_text(v));
            }
        }
        if !self.residuals.is_empty() {
            let _ = writeln!(out, "\ninvariants:");
            let width = self.residuals.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, r) in &self.residuals {
                let _ = writeln!(
                    out,
                    "  {k:<width$}  {:>10.3e}  (tol {:.1e})  {}",
                    r.value,
                    r.tolerance,
                    if r.pass { "ok" } else { "FAIL" }
                );
            }
        }
        if !self.table.rows.is_empty() {
            let _ = writeln!(out);
            let mut widths: Vec<usize> = self.table.headers.iter().map(|h| h.len()).collect();
            for row in &self.table.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: &[String]| -> String {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let _ = writeln!(out, "{}", line(&self.table.headers));
            for row in &self.table.rows {
                let _ = writeln!(out, "{}", line(row));
            }
        }
        out
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// The machine-readable error object printed on failure.
pub fn error_json(command: &str, input: &Value, err: &CliError) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "input": input,
        "error": {
            "code": err.code,
            "exit_status": err.code.exit_status(),
            "message": err.message,
            "details": err.details,
        },
    })
}
