use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Result of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    /// First counterexample found, as element indices.
    Fail { witness: Vec<usize>, note: String },
    /// Hypothesis of the check did not apply to this input.
    Skipped { reason: String },
    /// Observation only; never counts as a failure.
    Info { note: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
}

/// Ordered collection of named checks with their first witnesses.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub checks: Vec<Check>,
}

impl PropertyReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, outcome: Outcome) {
        self.checks.push(Check {
            name: name.into(),
            outcome,
        });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, Outcome::Pass);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: Vec<usize>, note: impl Into<String>) {
        self.push(
            name,
            Outcome::Fail {
                witness,
                note: note.into(),
            },
        );
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.push(name, Outcome::Skipped { reason: reason.into() });
    }

    pub fn info(&mut self, name: impl Into<String>, note: impl Into<String>) {
        self.push(name, Outcome::Info { note: note.into() });
    }

    /// Records `Pass` if `witness` is `None`, otherwise `Fail`.
    pub fn record(&mut self, name: impl Into<String>, witness: Option<Vec<usize>>, note: impl Into<String>) {
        match witness {
            None => self.pass(name),
            Some(w) => self.fail(name, w, note),
        }
    }

    pub fn extend(&mut self, prefix: &str, other: PropertyReport) {
        for c in other.checks {
            self.push(format!("{prefix}{}", c.name), c.outcome);
        }
    }

    pub fn get(&self, name: &str) -> Option<&Outcome> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.outcome)
    }

    pub fn passed(&self, name: &str) -> bool {
        matches!(self.get(name), Some(Outcome::Pass))
    }

    /// No check failed. Skipped and informational entries do not count.
    pub fn all_pass(&self) -> bool {
        !self.checks.iter().any(|c| matches!(c.outcome, Outcome::Fail { .. }))
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| matches!(c.outcome, Outcome::Fail { .. }))
    }

    /// One line per check, with witnesses rendered through `names`.
    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = match &c.outcome {
                Outcome::Pass => writeln!(out, "{}: pass", c.name),
                Outcome::Fail { witness, note } => {
                    let w: Vec<&str> = witness
                        .iter()
                        .map(|&i| names.get(i).map(String::as_str).unwrap_or("?"))
                        .collect();
                    writeln!(out, "{}: FAIL (witness {}) {}", c.name, w.join(","), note)
                }
                Outcome::Skipped { reason } => writeln!(out, "{}: skipped ({reason})", c.name),
                Outcome::Info { note } => writeln!(out, "{}: info: {note}", c.name),
            };
        }
        out
    }
}
