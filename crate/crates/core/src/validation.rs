//! Validation reports shared by the structural checkers.

use std::fmt;

use serde::Serialize;

/// Named failure classes reported by the validators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ViolationKind {
    BadComposition,
    NonAssociative,
    MissingInverse,
    BadIdentity,
    NotIdempotentDomain,
    NotRingIso,
    AxiomII,
    AxiomIII,
    IdentityAxiom,
    DecompositionRequired,
    InvariantFailed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, kind: ViolationKind, detail: impl Into<String>) {
        self.violations.push(Violation { kind, detail: detail.into() });
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{:?}: {}", v.kind, v.detail)?;
        }
        Ok(())
    }
}

/// Outcome of one named invariant check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, failures: Vec<String>) -> Self {
        let passed = failures.is_empty();
        let detail = if passed { String::new() } else { failures.join("; ") };
        CheckResult { name: name.into(), passed, detail }
    }
}
