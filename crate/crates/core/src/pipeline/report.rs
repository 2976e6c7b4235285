use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Display;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: String,
    pub title: String,
    pub status: Status,
    /// First failed assertion or error, when `status` is `fail`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub assertions: Vec<Assertion>,
    /// SHA-256 of computed objects in the polynomial file format.
    #[serde(default)]
    pub digests: BTreeMap<String, String>,
    /// Observed values that are recorded but not asserted.
    #[serde(default)]
    pub observations: BTreeMap<String, String>,
    pub wall_ms: u64,
}

impl StageReport {
    pub fn new(stage: impl Into<String>, title: impl Into<String>) -> StageReport {
        StageReport {
            stage: stage.into(),
            title: title.into(),
            status: Status::Pass,
            reason: None,
            assertions: Vec::new(),
            digests: BTreeMap::new(),
            observations: BTreeMap::new(),
            wall_ms: 0,
        }
    }

    pub fn skipped(stage: impl Into<String>, title: impl Into<String>, why: &str) -> StageReport {
        let mut r = StageReport::new(stage, title);
        r.status = Status::Skipped;
        r.reason = Some(why.to_string());
        r
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn record(
        &mut self,
        name: &str,
        expected: impl Display,
        got: impl Display,
        pass: bool,
    ) -> bool {
        self.assertions.push(Assertion {
            name: name.to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
            pass,
        });
        if !pass && self.status != Status::Fail {
            self.status = Status::Fail;
            self.reason = Some(format!("assertion `{name}` failed"));
        }
        pass
    }

    pub fn check_eq<T: PartialEq + Display>(&mut self, name: &str, expected: T, got: T) -> bool {
        let pass = expected == got;
        self.record(name, expected, got, pass)
    }

    pub fn check(&mut self, name: &str, cond: bool) -> bool {
        self.record(name, true, cond, cond)
    }

    /// Record an error that stopped the stage.
    pub fn error(&mut self, context: &str, err: impl Display) {
        let msg = format!("{context}: {err}");
        self.assertions.push(Assertion {
            name: context.to_string(),
            expected: "no error".into(),
            got: err.to_string(),
            pass: false,
        });
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.reason = Some(msg);
        }
    }

    pub fn observe(&mut self, key: &str, value: impl Display) {
        self.observations.insert(key.to_string(), value.to_string());
    }

    pub fn first_failure(&self) -> Option<&Assertion> {
        self.assertions.iter().find(|a| !a.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub tool_version: String,
    pub timestamp: String,
    pub golden_checksums: BTreeMap<String, String>,
    pub stages: Vec<StageReport>,
}

impl Certificate {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates always serialize")
    }

    /// The certificate with timestamps and timings cleared, for comparing
    /// two runs.
    pub fn without_timing(&self) -> Certificate {
        let mut c = self.clone();
        c.timestamp.clear();
        for s in &mut c.stages {
            s.wall_ms = 0;
        }
        c
    }

    pub fn stage(&self, id: &str) -> Option<&StageReport> {
        self.stages.iter().find(|s| s.stage == id)
    }
}
