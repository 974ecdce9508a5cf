//! Schema-versioned run reports.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "analytic")]
    Analytic,
    #[serde(rename = "mc")]
    MonteCarlo,
    #[serde(rename = "exact-symbolic")]
    ExactSymbolic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub criterion: String,
    pub value: Value,
    pub target: Value,
    pub tolerance: Option<f64>,
    pub pass: bool,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Entry {
    /// A value reported without a target.
    pub fn info(criterion: impl Into<String>, value: impl Serialize, provenance: Provenance) -> Self {
        Self {
            criterion: criterion.into(),
            value: serde_json::to_value(value).expect("serializable"),
            target: Value::Null,
            tolerance: None,
            pass: true,
            provenance,
            stderr: None,
            detail: None,
        }
    }

    pub fn check(
        criterion: impl Into<String>,
        value: impl Serialize,
        target: impl Serialize,
        tolerance: Option<f64>,
        pass: bool,
        provenance: Provenance,
    ) -> Self {
        Self {
            target: serde_json::to_value(target).expect("serializable"),
            tolerance,
            pass,
            ..Self::info(criterion, value, provenance)
        }
    }

    pub fn with_stderr(mut self, stderr: f64) -> Self {
        self.stderr = Some(stderr);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Vec<Entry>,
    pub pass: bool,
    pub wall_clock_seconds: f64,
}

/// Accumulates entries and stamps the elapsed time on completion.
pub struct ReportBuilder {
    command: String,
    inputs: Value,
    results: Vec<Entry>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(command: impl Into<String>, inputs: impl Serialize) -> Self {
        Self {
            command: command.into(),
            inputs: serde_json::to_value(inputs).expect("serializable"),
            results: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn push(&mut self, e: Entry) -> &mut Self {
        self.results.push(e);
        self
    }

    pub fn finish(self) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            pass: self.results.iter().all(|e| e.pass),
            command: self.command,
            inputs: self.inputs,
            results: self.results,
            wall_clock_seconds: self.started.elapsed().as_secs_f64(),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let err = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["criterion", "value", "target", "tolerance", "pass", "provenance", "stderr"])
            .map_err(err)?;
        for e in &self.results {
            w.write_record([
                e.criterion.clone(),
                cell(&e.value),
                cell(&e.target),
                e.tolerance.map(|t| t.to_string()).unwrap_or_default(),
                e.pass.to_string(),
                cell(&serde_json::to_value(e.provenance).expect("serializable")),
                e.stderr.map(|t| t.to_string()).unwrap_or_default(),
            ])
            .map_err(err)?;
        }
        w.flush().map_err(|e| Error::InvalidInput(format!("csv: {e}")))
    }

    /// One `PASS`/`FAIL` line per entry.
    pub fn summary_lines(&self) -> Vec<String> {
        self.results
            .iter()
            .map(|e| {
                let tol = e.tolerance.map(|t| format!(" tol={t:e}")).unwrap_or_default();
                let detail = e.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default();
                let target = if e.target.is_null() {
                    String::new()
                } else {
                    format!(" target={}", cell(&e.target))
                };
                format!(
                    "{} {}: value={}{}{}{}",
                    if e.pass { "PASS" } else { "FAIL" },
                    e.criterion,
                    cell(&e.value),
                    target,
                    tol,
                    detail
                )
            })
            .collect()
    }
}
