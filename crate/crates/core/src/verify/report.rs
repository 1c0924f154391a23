use serde::Serialize;
use std::time::Instant;

/// Minimal witness attached to a failing check.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    Permutation {
        perm: String,
        detail: String,
    },
    Class {
        representative: String,
        size: u64,
        detail: String,
    },
    Count {
        n: usize,
        expected: i64,
        actual: i64,
        detail: String,
    },
    /// A `(permutation, first removed letter, second removed letter)` triple.
    Triple {
        perm: String,
        removed_first: u8,
        removed_second: u8,
        detail: String,
    },
    Text {
        detail: String,
    },
}

/// Outcome of one checker run. `passed` is false exactly when a
/// counterexample is present.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    /// Inclusive range of lengths the run actually examined.
    pub n_range: [usize; 2],
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

impl CheckReport {
    pub(crate) fn from_outcome(
        check: &'static str,
        n_range: [usize; 2],
        outcome: Option<Counterexample>,
        seed: Option<u64>,
        started: Instant,
    ) -> Self {
        CheckReport {
            check,
            n_range,
            passed: outcome.is_none(),
            counterexample: outcome,
            seed,
            elapsed_ms: started.elapsed().as_millis() as u64,
            notes: None,
        }
    }

    pub(crate) fn with_notes(mut self, notes: Option<String>) -> Self {
        self.notes = notes;
        self
    }
}
