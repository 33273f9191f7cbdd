//! Outcome records for quantified law checks.

use serde::{Deserialize, Serialize};

/// Result status of a single law check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawStatus {
    Pass,
    Fail,
    Skipped,
}

/// How the tuples for a law check were drawn.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CheckMode {
    /// Every tuple from the generator pool was checked.
    Exhaustive,
    /// Tuples were drawn from a seeded generator.
    Sampled { seed: u64, count: u64 },
}

/// Outcome of one quantified law check.
///
/// `status == Fail` holds exactly when `witness` is present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    /// Law name, e.g. `"convolve-associativity"`.
    pub law: String,
    pub status: LawStatus,
    /// Number of tuples the check examined.
    pub tuples_checked: u64,
    /// Identifiers of the violating tuple (series and element labels), if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub mode: CheckMode,
}

impl LawReport {
    /// A passing report.
    pub fn pass(law: &str, tuples: u64, mode: CheckMode) -> Self {
        LawReport {
            law: law.to_string(),
            status: LawStatus::Pass,
            tuples_checked: tuples,
            witness: None,
            mode,
        }
    }

    /// A failing report carrying its witness.
    pub fn fail(law: &str, tuples: u64, mode: CheckMode, witness: Vec<String>) -> Self {
        LawReport {
            law: law.to_string(),
            status: LawStatus::Fail,
            tuples_checked: tuples,
            witness: Some(witness),
            mode,
        }
    }

    /// A skipped report (law not applicable to the instance).
    pub fn skipped(law: &str) -> Self {
        LawReport {
            law: law.to_string(),
            status: LawStatus::Skipped,
            tuples_checked: 0,
            witness: None,
            mode: CheckMode::Exhaustive,
        }
    }

    /// Internal consistency: fail iff witness present.
    pub fn is_consistent(&self) -> bool {
        (self.status == LawStatus::Fail) == self.witness.is_some()
    }
}
