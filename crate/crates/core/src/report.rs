//! Structured pass/fail records shared by every verification suite.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one identity family at one `n` (or a whole range when `n` is `None`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub n: Option<u64>,
    pub status: Status,
    /// Human-readable summary of what was checked.
    pub detail: String,
    /// Failing object(s), serialized with decimal strings for big numbers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl VerificationReport {
    pub fn pass(suite: &str, n: Option<u64>, detail: impl Into<String>) -> Self {
        Self::new(suite, n, Status::Pass, detail, None)
    }

    pub fn fail(suite: &str, n: Option<u64>, detail: impl Into<String>, witness: Value) -> Self {
        Self::new(suite, n, Status::Fail, detail, Some(witness))
    }

    pub fn skipped(suite: &str, n: Option<u64>, detail: impl Into<String>) -> Self {
        Self::new(suite, n, Status::Skipped, detail, None)
    }

    /// Pass when `failures` is empty, otherwise fail with the failures as witness.
    pub fn from_failures(
        suite: &str,
        n: Option<u64>,
        detail: impl Into<String>,
        failures: Vec<Value>,
    ) -> Self {
        if failures.is_empty() {
            Self::pass(suite, n, detail)
        } else {
            Self::fail(suite, n, detail, Value::Array(failures))
        }
    }

    fn new(
        suite: &str,
        n: Option<u64>,
        status: Status,
        detail: impl Into<String>,
        witness: Option<Value>,
    ) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            n,
            status,
            detail: detail.into(),
            witness,
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// Combine several reports of one suite into one; fails if any part fails.
    pub fn aggregate(suite: &str, n: Option<u64>, parts: &[VerificationReport]) -> Self {
        let failures: Vec<Value> = parts
            .iter()
            .filter(|r| r.failed())
            .map(|r| serde_json::to_value(r).unwrap_or(Value::Null))
            .collect();
        let all_skipped = !parts.is_empty() && parts.iter().all(|r| r.status == Status::Skipped);
        let detail = format!("{} sub-checks", parts.len());
        if all_skipped {
            return Self::skipped(suite, n, detail);
        }
        Self::from_failures(suite, n, detail, failures)
    }
}
