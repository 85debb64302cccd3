//! Aggregated pass/fail results, one entry per named check.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    /// First failing case, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    checks: BTreeMap<String, Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    /// Counts one case under `name`; the first failure is kept as the witness.
    pub fn record(&mut self, name: &str, outcome: Result<(), String>) {
        let entry = self.checks.entry(name.to_string()).or_insert_with(|| Check {
            name: name.to_string(),
            passed: true,
            cases: 0,
            failures: 0,
            witness: None,
        });
        entry.cases += 1;
        if let Err(w) = outcome {
            entry.failures += 1;
            entry.passed = false;
            entry.witness.get_or_insert(w);
        }
    }

    /// Registers `name` with zero cases so that it shows up even if nothing was tested.
    pub fn declare(&mut self, name: &str) {
        self.checks.entry(name.to_string()).or_insert_with(|| Check {
            name: name.to_string(),
            passed: true,
            cases: 0,
            failures: 0,
            witness: None,
        });
    }

    pub fn merge(&mut self, other: Report) {
        for (name, c) in other.checks {
            match self.checks.get_mut(&name) {
                None => {
                    self.checks.insert(name, c);
                }
                Some(e) => {
                    e.cases += c.cases;
                    e.failures += c.failures;
                    e.passed &= c.passed;
                    if e.witness.is_none() {
                        e.witness = c.witness;
                    }
                }
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.get(name)
    }

    /// Checks in name order.
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.values()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.values().filter(|c| !c.passed)
    }

    pub fn total_cases(&self) -> usize {
        self.checks.values().map(|c| c.cases).sum()
    }
}
