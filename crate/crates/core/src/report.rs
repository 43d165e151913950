//! Verdicts of the exhaustive checks, serialised as
//! `{statement-id, rank, holds, counterexamples}`.

use serde::Serialize;

/// Version of the JSON layout of reports written by this crate.
pub const SCHEMA_VERSION: u32 = 1;

/// Counterexamples kept per report; `failures` still counts all of them.
const MAX_WITNESSES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    #[serde(rename = "statement-id")]
    pub statement_id: String,
    pub rank: usize,
    pub holds: bool,
    pub checked: u64,
    pub failures: u64,
    pub counterexamples: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn new(statement_id: impl Into<String>, rank: usize) -> Self {
        CheckReport {
            statement_id: statement_id.into(),
            rank,
            holds: true,
            checked: 0,
            failures: 0,
            counterexamples: Vec::new(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Records one instance; the witness text is only built on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.holds = false;
        self.failures += 1;
        if self.counterexamples.len() < MAX_WITNESSES {
            self.counterexamples.push(witness);
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures += other.failures;
        self.holds &= other.holds;
        for w in other.counterexamples {
            if self.counterexamples.len() < MAX_WITNESSES {
                self.counterexamples.push(w);
            }
        }
    }

    /// One line: `PASS id (rank n, k checked)` or `FAIL ...: first witness`.
    pub fn summary(&self) -> String {
        let status = if self.holds { "PASS" } else { "FAIL" };
        let mut s = format!("{status} {} (rank {}, {} checked", self.statement_id, self.rank, self.checked);
        if self.failures > 0 {
            s.push_str(&format!(", {} failing", self.failures));
        }
        s.push(')');
        if let Some(w) = self.counterexamples.first() {
            s.push_str(&format!(": {w}"));
        }
        s
    }
}

pub fn all_hold(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.holds)
}
