//! Structured verdicts shared by all axiom checkers.

use serde::Serialize;

const MAX_RECORDED: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
}

/// Outcome of a batch of checks. At most 64 violations are recorded; `failed`
/// counts all of them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: usize,
    pub failed: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.failed == 0
    }

    pub fn check(&mut self, axiom: &str, holds: bool, witness: impl FnOnce() -> Vec<String>) {
        self.checks += 1;
        if !holds {
            self.fail(axiom, witness());
        }
    }

    pub fn fail(&mut self, axiom: &str, witness: Vec<String>) {
        self.failed += 1;
        if self.violations.len() < MAX_RECORDED {
            self.violations.push(Violation {
                axiom: axiom.to_string(),
                witness,
            });
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.failed += other.failed;
        for v in other.violations {
            if self.violations.len() < MAX_RECORDED {
                self.violations.push(v);
            }
        }
    }

    pub fn violates(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}
