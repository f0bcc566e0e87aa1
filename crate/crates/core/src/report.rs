//! Outcome of an axiom check: every failed instance with where it failed.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Stable id of the axiom, e.g. `associativity`.
    pub check: String,
    /// The generators, objects or coordinates that witness the failure.
    pub at: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.check, self.at, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
    /// Things the check could not decide. They never count as passing
    /// evidence but do not fail the report either.
    pub unverified: Vec<String>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fail(&mut self, check: &str, at: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation { check: check.into(), at: at.into(), detail: detail.into() });
    }

    pub fn unverified(&mut self, note: impl Into<String>) {
        self.unverified.push(note.into());
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.violations.extend(other.violations);
        self.unverified.extend(other.unverified);
    }

    pub fn has(&self, check: &str) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pass() {
            write!(f, "pass")?;
        } else {
            writeln!(f, "{} violation(s)", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
        }
        for u in &self.unverified {
            write!(f, "\n  unverified: {u}")?;
        }
        Ok(())
    }
}
