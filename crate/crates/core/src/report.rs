//! Machine-readable check reports shared by every validator.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Value) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness),
        }
    }

    pub fn skipped(name: impl Into<String>, reason: Value) -> Self {
        Check {
            name: name.into(),
            status: Status::Skipped,
            witness: Some(reason),
        }
    }

    /// `Pass` when `witness` is `None`, otherwise `Fail` carrying it.
    pub fn from_witness(name: impl Into<String>, witness: Option<Value>) -> Self {
        match witness {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn with(mut self, check: Check) -> Self {
        self.checks.push(check);
        self
    }

    /// True only when every check passed; a skipped check is not a pass.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn any_skipped(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Skipped)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    /// Short human summary of the failing checks.
    pub fn failure_summary(&self) -> String {
        let names: Vec<_> = self
            .checks
            .iter()
            .filter(|c| c.status != Status::Pass)
            .map(|c| match &c.witness {
                Some(w) => format!("{} {}", c.name, w),
                None => c.name.clone(),
            })
            .collect();
        if names.is_empty() {
            format!("{}: ok", self.subject)
        } else {
            format!("{}: {}", self.subject, names.join("; "))
        }
    }
}
