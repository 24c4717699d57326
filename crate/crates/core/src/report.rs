//! Pass/fail records shared by the verification suites.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One verified identity: its name, the parameters it was checked at, and the
/// first counterexample when it failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub relation: String,
    pub params: BTreeMap<String, i64>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    pub fn new<I, K>(relation: impl Into<String>, params: I, failure: Option<String>) -> Self
    where
        I: IntoIterator<Item = (K, i64)>,
        K: Into<String>,
    {
        Self {
            relation: relation.into(),
            params: params.into_iter().map(|(k, v)| (k.into(), v)).collect(),
            passed: failure.is_none(),
            counterexample: failure,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{} {} ({})", if self.passed { "PASS" } else { "FAIL" }, self.relation, params.join(", "))?;
        if let Some(c) = &self.counterexample {
            write!(f, ": {c}")?;
        }
        Ok(())
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// First failing check, if any.
pub fn first_failure(checks: &[Check]) -> Option<&Check> {
    checks.iter().find(|c| !c.passed)
}
