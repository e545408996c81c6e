//! Structured verification records shared by the verifier entry points and
//! the command-line reports.

use serde::{Deserialize, Serialize};

/// One executed check: what was tested, on which instance, and how it went.
/// `details` carries the witness or counterexample in human-readable form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub instance: String,
    pub passed: bool,
    pub details: String,
}

impl Check {
    pub fn pass(name: impl Into<String>, instance: impl Into<String>, details: impl Into<String>) -> Self {
        Check { name: name.into(), instance: instance.into(), passed: true, details: details.into() }
    }

    pub fn fail(name: impl Into<String>, instance: impl Into<String>, details: impl Into<String>) -> Self {
        Check { name: name.into(), instance: instance.into(), passed: false, details: details.into() }
    }

    pub fn from_bool(
        name: impl Into<String>,
        instance: impl Into<String>,
        passed: bool,
        details: impl Into<String>,
    ) -> Self {
        Check { name: name.into(), instance: instance.into(), passed, details: details.into() }
    }
}

/// A batch of checks run under one heading.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub title: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        VerificationReport { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        format!(
            "{}: {}/{} checks passed{}",
            self.title,
            self.checks.len() - failed,
            self.checks.len(),
            if failed == 0 { String::new() } else { format!(" ({failed} FAILED)") }
        )
    }
}
