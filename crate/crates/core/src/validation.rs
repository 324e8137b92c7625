use std::fmt;

use crate::error::{Error, Result};

/// One failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub at: String,
}

/// Outcome of checking a list of axioms. Empty means every axiom holds exactly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violate(&mut self, axiom: &str, at: impl Into<String>) {
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            at: at.into(),
        });
    }

    pub fn check(&mut self, holds: bool, axiom: &str, at: impl FnOnce() -> String) {
        if !holds {
            self.violate(axiom, at());
        }
    }

    /// Appends `other`, prefixing its axiom names.
    pub fn absorb(&mut self, prefix: &str, other: Validation) {
        for v in other.violations {
            self.violations.push(Violation {
                axiom: format!("{prefix}{}", v.axiom),
                at: v.at,
            });
        }
    }

    pub fn violates(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    /// Distinct violated axiom names in first-seen order.
    pub fn axioms(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.axiom.as_str()) {
                out.push(&v.axiom);
            }
        }
        out
    }

    /// Turns violations into a precondition error naming the object.
    pub fn require(self, what: &str) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{what} is invalid: {self}")))
        }
    }
}

impl fmt::Display for Validation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "all axioms hold");
        }
        let parts: Vec<String> = self.violations.iter().take(8).map(|v| format!("{} at {}", v.axiom, v.at)).collect();
        write!(f, "{}", parts.join("; "))?;
        if self.violations.len() > 8 {
            write!(f, "; and {} more", self.violations.len() - 8)?;
        }
        Ok(())
    }
}
