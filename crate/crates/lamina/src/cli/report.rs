//! Reports produced by the command-line drivers and their serializations.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Csv,
    Text,
}

/// A run's verdict and payload. `rows` back the csv form; `lines` the text
/// form (the table when empty), followed by `notes`; `json` is emitted as is.
#[derive(Clone, Debug)]
pub struct Report {
    pub ok: bool,
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub lines: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(ok: bool, json: impl Serialize) -> Result<Self> {
        let json = serde_json::to_value(json).map_err(|e| Error::IoFailure(e.to_string()))?;
        Ok(Report { ok, json, header: vec![], rows: vec![], lines: vec![], notes: vec![] })
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|s| s.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn emit(&self, format: Emit) -> Result<Vec<u8>> {
        let io = |e: &dyn std::fmt::Display| Error::IoFailure(e.to_string());
        match format {
            Emit::Json => {
                let mut out = serde_json::to_vec_pretty(&self.json).map_err(|e| io(&e))?;
                out.push(b'\n');
                Ok(out)
            }
            Emit::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                if !self.header.is_empty() {
                    w.write_record(&self.header).map_err(|e| io(&e))?;
                }
                for r in &self.rows {
                    w.write_record(r).map_err(|e| io(&e))?;
                }
                w.into_inner().map_err(|e| io(&e))
            }
            Emit::Text => {
                let mut out = String::new();
                for l in &self.lines {
                    out.push_str(l);
                    out.push('\n');
                }
                if self.lines.is_empty() {
                    for r in std::iter::once(&self.header).chain(&self.rows) {
                        out.push_str(&r.join("\t"));
                        out.push('\n');
                    }
                }
                for l in &self.notes {
                    out.push_str(l);
                    out.push('\n');
                }
                out.push_str(if self.ok { "ok\n" } else { "MISMATCH\n" });
                Ok(out.into_bytes())
            }
        }
    }
}

pub fn vec_str(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}
