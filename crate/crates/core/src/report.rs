//! Verdicts with counterexample witnesses, shared by every law checker.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::element::Element;

/// A concrete counterexample to a named law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub law: String,
    pub element: Element,
    pub detail: String,
}

impl Witness {
    pub fn new(law: impl Into<String>, element: Element, detail: impl Into<String>) -> Self {
        Witness { law: law.into(), element, detail: detail.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "law": self.law, "element": self.element.to_json(), "detail": self.detail })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}: {}", self.law, self.element, self.detail)
    }
}

/// Outcome of an exhaustive check: how many instances of each law were
/// examined, how many were skipped by a truncation bound, and the first
/// failure per law.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub bound: Option<usize>,
    pub checked: BTreeMap<String, usize>,
    pub skipped: BTreeMap<String, usize>,
    pub failures: Vec<Witness>,
}

impl CheckReport {
    pub fn with_bound(bound: Option<usize>) -> Self {
        CheckReport { bound, ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Witness> {
        self.failures.first()
    }

    /// Records one instance of `law`; keeps only the first failure per law.
    pub fn record(&mut self, law: &str, outcome: Result<(), (Element, String)>) {
        *self.checked.entry(law.to_string()).or_default() += 1;
        if let Err((element, detail)) = outcome {
            if !self.failures.iter().any(|w| w.law == law) {
                self.failures.push(Witness::new(law, element, detail));
            }
        }
    }

    pub fn check(&mut self, law: &str, holds: bool, element: impl FnOnce() -> Element, detail: impl FnOnce() -> String) {
        let outcome = if holds { Ok(()) } else { Err((element(), detail())) };
        self.record(law, outcome);
    }

    pub fn skip(&mut self, law: &str) {
        *self.skipped.entry(law.to_string()).or_default() += 1;
    }

    pub fn merge(&mut self, other: CheckReport) {
        for (k, v) in other.checked {
            *self.checked.entry(k).or_default() += v;
        }
        for (k, v) in other.skipped {
            *self.skipped.entry(k).or_default() += v;
        }
        for w in other.failures {
            if !self.failures.iter().any(|x| x.law == w.law) {
                self.failures.push(w);
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "bound": self.bound,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": self.failures.iter().map(Witness::to_json).collect::<Vec<_>>(),
        })
    }
}
