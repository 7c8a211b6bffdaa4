//! Check results and the JSON report shape shared by the CLI and tests.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default)]
    pub witness: Value,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: Value::Null,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<Value>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            witness: witness.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// An ordered list of checks.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Checks(pub Vec<Check>);

impl Checks {
    pub fn new() -> Self {
        Checks(Vec::new())
    }

    pub fn push(&mut self, c: Check) {
        self.0.push(c);
    }

    /// Pass if `ok`, otherwise fail with the lazily built witness.
    pub fn expect(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> Value) {
        self.0.push(if ok {
            Check::pass(name)
        } else {
            Check::fail(name, witness())
        });
    }

    /// Pass if `expected == actual`; the witness records both.
    pub fn expect_eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        name: impl Into<String>,
        expected: T,
        actual: T,
    ) {
        let ok = expected == actual;
        self.expect(name, ok, || {
            serde_json::json!({ "expected": format!("{expected:?}"), "actual": format!("{actual:?}") })
        });
    }

    pub fn extend(&mut self, other: Checks) {
        self.0.extend(other.0);
    }

    /// Appends `other` with every name prefixed.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Checks) {
        self.0.extend(other.0.into_iter().map(|mut c| {
            c.name = format!("{prefix}{}", c.name);
            c
        }));
    }

    pub fn all_passed(&self) -> bool {
        self.0.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.0.iter().filter(|c| !c.passed())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Check> {
        self.0.iter()
    }
}

/// Outcome of a verification run.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub qs: Vec<u32>,
    pub variants: Vec<String>,
    pub checks: Checks,
    pub seed: u64,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.all_passed()
    }
}

/// Top-level document emitted by every CLI command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub q: u32,
    pub results: Value,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub version: String,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// Serializes with keys in sorted order.
    pub fn to_canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report is serializable");
        serde_json::to_string_pretty(&v).expect("value is serializable")
    }
}

/// Number with 12 significant digits, as used for approximate values.
pub fn approx(x: f64) -> Value {
    if x == 0.0 || !x.is_finite() {
        return serde_json::json!(0.0);
    }
    let s = format!("{:.11e}", x);
    let v: f64 = s.parse().expect("formatted float parses");
    serde_json::json!(if v == 0.0 { 0.0 } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_roundtrip() {
        let r = Report {
            command: "mul".into(),
            q: 7,
            results: serde_json::json!({"z": 1, "a": "1/2"}),
            checks: vec![
                Check::pass("x"),
                Check::fail("y", serde_json::json!({"k": [1, 2]})),
            ],
            seed: 3,
            version: "0.1.0".into(),
        };
        let s = r.to_canonical_json();
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_canonical_json(), s);
        assert!(s.find("\"a\"").unwrap() < s.find("\"z\"").unwrap());
        assert!(!r.passed());
    }

    #[test]
    fn approx_digits() {
        assert_eq!(approx(1.0 / 3.0), serde_json::json!(0.333333333333));
        assert_eq!(approx(-0.0), serde_json::json!(0.0));
    }
}
