//! Machine-readable verdicts for identity checks.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::Serialize;
use serde_json::Value;

use crate::scalar::{scalar_to_json, to_decimal, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
}

/// The first case where the two sides of an identity disagree, or a
/// representative case for reports that hold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    #[serde(flatten)]
    pub indices: BTreeMap<String, i64>,
    pub lhs: Value,
    pub rhs: Value,
}

impl Witness {
    pub fn exact(indices: &[(&str, i64)], lhs: &Scalar, rhs: &Scalar) -> Self {
        Witness { indices: index_map(indices), lhs: scalar_to_json(lhs), rhs: scalar_to_json(rhs) }
    }

    /// Numeric sides are shown as decimals; exact partial sums get unwieldy.
    pub fn numeric(indices: &[(&str, i64)], lhs: &Rational, rhs: &Rational) -> Self {
        Witness {
            indices: index_map(indices),
            lhs: Value::String(to_decimal(lhs, 15)),
            rhs: Value::String(to_decimal(rhs, 15)),
        }
    }
}

fn index_map(indices: &[(&str, i64)]) -> BTreeMap<String, i64> {
    indices.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Verdict for one identity over a range of cases.
///
/// `informational` marks literal evaluations whose outcome is recorded but
/// not asserted; their failures never count against a run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub informational: bool,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub params: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CheckReport>,
}

impl CheckReport {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        CheckReport {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Holds,
            informational: false,
            cases: 0,
            failures: 0,
            witness: None,
            params: BTreeMap::new(),
            values: BTreeMap::new(),
            children: Vec::new(),
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn set_value(&mut self, key: &str, value: impl Into<Value>) {
        self.values.insert(key.to_string(), value.into());
    }

    /// Records one case. The first failing witness is kept.
    pub fn record(&mut self, holds: bool, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        if !holds {
            self.failures += 1;
            self.status = Status::Fails;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    /// Records an exact comparison `lhs = rhs`.
    pub fn compare(&mut self, indices: &[(&str, i64)], lhs: &Scalar, rhs: &Scalar) -> bool {
        let holds = lhs == rhs;
        self.record(holds, || Witness::exact(indices, lhs, rhs));
        holds
    }

    /// Records `|lhs − rhs| < tol`.
    pub fn compare_numeric(
        &mut self,
        indices: &[(&str, i64)],
        lhs: &Rational,
        rhs: &Rational,
        tol: &Rational,
    ) -> bool {
        let holds = (lhs - rhs).abs() < *tol;
        self.record(holds, || Witness::numeric(indices, lhs, rhs));
        holds
    }

    pub fn not_applicable(mut self, reason: &str) -> Self {
        self.status = Status::NotApplicable;
        self.values.insert("reason".into(), Value::String(reason.to_string()));
        self
    }

    /// Attaches a sub-check. A non-informational child that fails makes the
    /// parent fail; informational children are carried along as-is.
    pub fn push_child(&mut self, child: CheckReport) {
        if !child.informational && child.status == Status::Fails {
            self.status = Status::Fails;
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = child.witness.clone();
            }
        }
        self.cases += child.cases;
        self.children.push(child);
    }

    /// True if this report, or any asserted sub-check, fails.
    pub fn asserted_failure(&self) -> bool {
        if self.informational {
            return false;
        }
        self.status == Status::Fails || self.children.iter().any(CheckReport::asserted_failure)
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Tag};

    #[test]
    fn first_failure_is_the_witness() {
        let mut r = CheckReport::new("demo", "x = x");
        assert!(r.compare(&[("n", 0)], &Scalar::one(Tag::Rational), &Scalar::one(Tag::Rational)));
        assert!(!r.compare(&[("n", 1)], &Scalar::one(Tag::Rational), &Scalar::zero(Tag::Rational)));
        r.compare(&[("n", 2)], &Scalar::one(Tag::Rational), &Scalar::from_int(Tag::Rational, 2));
        assert_eq!(r.status, Status::Fails);
        assert_eq!(r.failures, 2);
        let w = r.witness.as_ref().unwrap();
        assert_eq!(w.indices["n"], 1);
        let json = r.to_json();
        assert_eq!(json["status"], "fails");
        assert_eq!(json["witness"]["n"], 1);
        assert_eq!(json["witness"]["lhs"], "1");
    }

    #[test]
    fn informational_children_do_not_fail_parent() {
        let mut child = CheckReport::new("literal", "a = b").informational();
        child.compare(&[], &Scalar::one(Tag::Rational), &Scalar::zero(Tag::Rational));
        let mut parent = CheckReport::new("parent", "p");
        parent.push_child(child);
        assert_eq!(parent.status, Status::Holds);
        assert!(!parent.asserted_failure());

        let mut asserted = CheckReport::new("asserted", "c = d");
        asserted.compare_numeric(&[], &rat(1), &rat(2), &rat(1));
        parent.push_child(asserted);
        assert!(parent.asserted_failure());
        assert!(parent.witness.is_some());
    }
}
