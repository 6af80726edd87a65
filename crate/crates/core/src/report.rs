//! Pass/fail reports shared by the verification suites and the CLI.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Note {
    pub name: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub genus: u32,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<Note>,
}

impl Report {
    pub fn new(suite: impl Into<String>, genus: u32) -> Self {
        Report { suite: suite.into(), genus, checks: Vec::new(), notes: Vec::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn note(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.notes.push(Note { name: name.into(), detail: detail.into() });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Appends another report's checks and notes with a `suite/` prefix.
    pub fn absorb(&mut self, other: Report) {
        let prefix = other.suite;
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}/{}", c.name), ..c });
        }
        for n in other.notes {
            self.notes.push(Note { name: format!("{prefix}/{}", n.name), ..n });
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (genus {})", self.suite, self.genus)?;
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  [{mark}] {}", c.name)?;
            } else {
                writeln!(f, "  [{mark}] {}: {}", c.name, c.detail)?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note {}: {}", n.name, n.detail)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}
