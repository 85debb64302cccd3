//! The run report printed by every subcommand.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use tambara_core::{Check, Report};

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Only filled in with `--timing`, so that reports stay byte-stable by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
}

impl RunReport {
    pub fn new(command: &str, report: Report, result: Option<Value>) -> RunReport {
        let checks: Vec<Check> = report.checks().cloned().collect();
        RunReport {
            command: command.to_string(),
            passed: checks.iter().all(|c| c.passed),
            checks,
            timing_ms: None,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            write!(out, "{mark} {} ({} cases", c.name, c.cases).unwrap();
            if c.failures > 0 {
                write!(out, ", {} failed", c.failures).unwrap();
            }
            out.push(')');
            if let Some(w) = &c.witness {
                write!(out, ": {w}").unwrap();
            }
            out.push('\n');
        }
        if let Some(r) = &self.result {
            writeln!(out, "result: {r}").unwrap();
        }
        if let Some(t) = self.timing_ms {
            writeln!(out, "timing: {t} ms").unwrap();
        }
        writeln!(out, "passed: {}", self.passed).unwrap();
        out
    }
}
