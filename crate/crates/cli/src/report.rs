//! Machine-readable run reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use tannaka::report::CheckReport;

use crate::exit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub check: String,
    pub at: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub verdict: Verdict,
    pub witnesses: Vec<WitnessRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckRecord {
    pub fn from_report(id: &str, r: &CheckReport) -> Self {
        let verdict = if !r.is_pass() {
            Verdict::Fail
        } else if r.unverified.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Unverified
        };
        CheckRecord {
            id: id.into(),
            verdict,
            witnesses: r
                .violations
                .iter()
                .map(|v| WitnessRecord { check: v.check.clone(), at: v.at.clone(), detail: v.detail.clone() })
                .collect(),
            notes: r.unverified.clone(),
        }
    }

    pub fn failed(id: &str, check: &str, at: &str, detail: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            verdict: Verdict::Fail,
            witnesses: vec![WitnessRecord { check: check.into(), at: at.into(), detail: detail.into() }],
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    pub checks: Vec<CheckRecord>,
    pub results: BTreeMap<String, serde_json::Value>,
    /// Wall-clock time; the only field that varies between identical runs.
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), verdict: Verdict::Pass, checks: Vec::new(), results: BTreeMap::new(), timing_ms: 0 }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.verdict = match (self.verdict, record.verdict) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Unverified, _) | (_, Verdict::Unverified) => Verdict::Unverified,
            _ => Verdict::Pass,
        };
        self.checks.push(record);
    }

    pub fn push_report(&mut self, id: &str, r: &CheckReport) {
        self.push(CheckRecord::from_report(id, r));
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.into(), serde_json::to_value(value).expect("plain data serializes"));
    }

    /// Unverified verdicts do not fail a run.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Fail => exit::FAILURE,
            Verdict::Pass | Verdict::Unverified => exit::PASS,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check, then the failing instances.
    pub fn summary(&self) -> String {
        let word = |v: Verdict| match v {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Unverified => "unverified",
        };
        let mut out = format!("{}: {}\n", self.command, word(self.verdict));
        for c in &self.checks {
            let _ = writeln!(out, "  {:<24} {}", c.id, word(c.verdict));
            for w in &c.witnesses {
                let _ = writeln!(out, "    {} at {}: {}", w.check, w.at, w.detail);
            }
            for n in &c.notes {
                let _ = writeln!(out, "    note: {n}");
            }
        }
        out
    }
}
