//! Outcome of an exhaustive law check.

use std::fmt;

use serde_json::{json, Value};

/// Lists every violated instance of a named family of laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            checked: 0,
            violations: Vec::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records one checked instance, failing with `msg` unless `ok`.
    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(msg());
        }
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.checked += 1;
        self.violations.push(msg.into());
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(
            other
                .violations
                .into_iter()
                .map(|v| format!("{}: {v}", other.name)),
        );
    }

    pub fn to_value(&self) -> Value {
        json!({
            "name": self.name,
            "checked": self.checked,
            "violations": self.violations,
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "{}: ok ({} checked)", self.name, self.checked)
        } else {
            writeln!(
                f,
                "{}: {} violation(s) in {} checked",
                self.name,
                self.violations.len(),
                self.checked
            )?;
            for v in &self.violations {
                writeln!(f, "  - {v}")?;
            }
            Ok(())
        }
    }
}
