//! Verification reports shared by every identity check.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub location: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one verification suite. The suite passed iff `failures` is
/// empty; `notes` carry observations that are reported but not asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub range: BTreeMap<String, i64>,
    pub checks_run: u64,
    pub failures: Vec<Failure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            ..Default::default()
        }
    }

    pub fn with_range(mut self, key: &str, value: i64) -> Self {
        self.range.insert(key.to_string(), value);
        self
    }

    /// Counts one check and records a failure when `expected != actual`.
    pub fn check<T: PartialEq + Display>(
        &mut self,
        location: impl Display,
        expected: &T,
        actual: &T,
    ) -> bool {
        self.checks_run += 1;
        let ok = expected == actual;
        if !ok {
            self.failures.push(Failure {
                location: location.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
        ok
    }

    /// Counts one floating check passing when `|expected - actual| <= tol`.
    pub fn check_close(
        &mut self,
        location: impl Display,
        expected: f64,
        actual: f64,
        tol: f64,
    ) -> bool {
        self.checks_run += 1;
        let ok = (expected - actual).abs() <= tol;
        if !ok {
            self.failures.push(Failure {
                location: location.to_string(),
                expected: format!("{expected:e}"),
                actual: format!("{actual:e} (tolerance {tol:e})"),
            });
        }
        ok
    }

    /// Records a failure that has no comparable expected value (e.g. an
    /// exact division that did not go through).
    pub fn fail(&mut self, location: impl Display, expected: impl Display, actual: impl Display) {
        self.checks_run += 1;
        self.failures.push(Failure {
            location: location.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Folds `other` into `self`, prefixing its locations and notes with its
    /// suite name.
    pub fn absorb(&mut self, other: VerificationReport) {
        let tag = other.suite;
        self.checks_run += other.checks_run;
        self.failures
            .extend(other.failures.into_iter().map(|f| Failure {
                location: format!("{tag}: {}", f.location),
                ..f
            }));
        self.notes
            .extend(other.notes.into_iter().map(|n| format!("{tag}: {n}")));
        for (k, v) in other.range {
            let slot = self.range.entry(k).or_insert(v);
            *slot = (*slot).max(v);
        }
    }
}
