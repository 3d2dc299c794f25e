use std::collections::BTreeMap;

use serde::Serialize;

use crate::group::GroupParams;

/// One named check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Offending element in window notation, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, witness: Option<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            detail: detail.into(),
            witness,
        }
    }

    pub fn from_outcome(
        name: impl Into<String>,
        outcome: std::result::Result<String, (String, Option<String>)>,
    ) -> Self {
        match outcome {
            Ok(detail) => Check::pass(name, detail),
            Err((detail, witness)) => Check::fail(name, detail, witness),
        }
    }
}

/// Every check that was run, passing or not.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    #[serde(serialize_with = "crate::group::params_as_array")]
    pub group: GroupParams,
    pub checks: Vec<Check>,
    /// Wall-clock seconds per check; left empty for reproducible output.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn new(group: GroupParams) -> Self {
        VerificationReport {
            group,
            checks: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
