//! Pass/fail bookkeeping shared by the verifiers.

use std::fmt;

use serde::Serialize;

/// One named check: how many cases ran and the first failing case, if any.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub witness: Option<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<22} {} ({} cases)", self.name, if self.passed { "PASS" } else { "FAIL" }, self.cases)?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

pub(crate) struct Check {
    name: &'static str,
    cases: usize,
    witness: Option<String>,
}

impl Check {
    pub(crate) fn new(name: &'static str) -> Self {
        Check { name, cases: 0, witness: None }
    }

    /// Records one case, keeping the first failing witness.
    pub(crate) fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub(crate) fn done(self) -> CheckResult {
        CheckResult { name: self.name, passed: self.witness.is_none(), cases: self.cases, witness: self.witness }
    }
}
