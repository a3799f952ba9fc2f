//! Check reports: `CHECK <name> <scope> PASS|FAIL [witness]` lines and a
//! JSON mirror with fields `check`, `scope`, `status`, `witness`.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub check: String,
    /// Whitespace-free scope token, e.g. `T(2,1,2)` or `level=2`.
    pub scope: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckLine {
    pub fn pass(check: impl Into<String>, scope: impl Into<String>) -> Self {
        CheckLine { check: check.into(), scope: scope.into(), status: Status::Pass, witness: None }
    }

    pub fn fail(check: impl Into<String>, scope: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckLine { check: check.into(), scope: scope.into(), status: Status::Fail, witness: Some(witness.into()) }
    }

    /// PASS when `failures` is empty, otherwise FAIL with the first failure
    /// and the total count as witness.
    pub fn from_failures(check: impl Into<String>, scope: impl Into<String>, failures: &[String]) -> Self {
        match failures {
            [] => CheckLine::pass(check, scope),
            [only] => CheckLine::fail(check, scope, only.clone()),
            [first, rest @ ..] => CheckLine::fail(check, scope, format!("{first} (+{} more)", rest.len())),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("check lines serialize")
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "CHECK {} {} {}", self.check, self.scope, status)?;
        if let Some(w) = &self.witness {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_forms() {
        let ok = CheckLine::pass("section", "T(1,0,1)");
        assert_eq!(ok.to_string(), "CHECK section T(1,0,1) PASS");
        let bad = CheckLine::from_failures("alpha", "level=2", &["a".into(), "b".into()]);
        assert_eq!(bad.to_string(), "CHECK alpha level=2 FAIL a (+1 more)");
        let json = bad.to_json();
        assert!(json.contains("\"status\":\"FAIL\""));
        assert_eq!(serde_json::from_str::<CheckLine>(&json).unwrap(), bad);
        assert_eq!(serde_json::from_str::<CheckLine>(&ok.to_json()).unwrap(), ok);
    }
}
