//! Pass/fail records produced by the `verify_*` routines.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::json::big_int;

/// A single disagreement between two ways of computing the same number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// Named parameters identifying the case, e.g. `[("n", 4), ("k", 1)]`.
    pub at: Vec<(&'static str, i64)>,
    pub expected: BigInt,
    pub actual: BigInt,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at: Vec<String> = self.at.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}: expected {}, got {}", at.join(" "), self.expected, self.actual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub cases: usize,
    pub mismatches: Vec<Mismatch>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            cases: 0,
            mismatches: Vec::new(),
        }
    }

    /// Records one comparison.
    pub fn compare(
        &mut self,
        at: &[(&'static str, i64)],
        expected: impl Into<BigInt>,
        actual: impl Into<BigInt>,
    ) {
        self.cases += 1;
        let (expected, actual) = (expected.into(), actual.into());
        if expected != actual {
            self.mismatches.push(Mismatch {
                at: at.to_vec(),
                expected,
                actual,
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Mismatch> {
        self.mismatches.first()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "cases": self.cases,
            "passed": self.passed(),
            "mismatches": self.mismatches.iter().map(|m| json!({
                "at": m.at.iter().map(|(k, v)| ((*k).to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
                "expected": big_int(&m.expected),
                "actual": big_int(&m.actual),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_failure() {
            None => write!(f, "{}: pass ({} cases)", self.check, self.cases),
            Some(m) => write!(
                f,
                "{}: FAIL ({} of {} cases differ; first at {m})",
                self.check,
                self.mismatches.len(),
                self.cases
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_first_failure() {
        let mut r = Report::new("demo");
        r.compare(&[("n", 0)], 1, 1);
        r.compare(&[("n", 1), ("k", 0)], 2, 3);
        assert!(!r.passed());
        assert_eq!(r.cases, 2);
        assert_eq!(r.to_string(), "demo: FAIL (1 of 2 cases differ; first at n=1 k=0: expected 2, got 3)");
        assert_eq!(r.to_json()["mismatches"][0]["at"]["k"], 0);
    }
}
