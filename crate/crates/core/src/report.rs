//! Pass/fail bookkeeping for the verification routines.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One checked statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub operation: String,
    pub n: Option<u64>,
    pub passed: bool,
    pub expected: String,
    pub got: String,
}

/// An ordered list of checks under a common title.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn check(
        &mut self,
        operation: impl Into<String>,
        n: Option<u64>,
        passed: bool,
        expected: impl fmt::Display,
        got: impl fmt::Display,
    ) -> bool {
        self.checks.push(Check {
            operation: operation.into(),
            n,
            passed,
            expected: expected.to_string(),
            got: got.to_string(),
        });
        passed
    }

    pub fn check_eq<T: PartialEq + fmt::Display>(
        &mut self,
        operation: impl Into<String>,
        n: Option<u64>,
        expected: T,
        got: T,
    ) -> bool {
        let ok = expected == got;
        self.check(operation, n, ok, expected, got)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n.map(|n| format!("n={n} ")).unwrap_or_default();
        write!(f, "{n}{}: expected {}, got {}", self.operation, self.expected, self.got)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        let status = if failed == 0 { "ok" } else { "FAILED" };
        write!(
            f,
            "{}: {} checks, {} failed [{}]",
            self.title,
            self.len(),
            failed,
            status
        )?;
        if let Some(c) = self.first_failure() {
            write!(f, "\n  first counterexample: {c}")?;
        }
        Ok(())
    }
}
