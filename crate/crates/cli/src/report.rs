use serde::Serialize;
use serde_json::Value;
use std::fmt;

pub const SCHEMA: &str = "1";

/// A malformed flag or argument; the binary maps it to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: None,
        }
    }

    pub fn with_detail(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: Some(detail.into()),
        }
    }
}

/// Output of one command: inputs echoed, outputs, per-invariant results.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
    pub passed: bool,
    /// Only with `--timing`, so reports stay byte-identical by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, outputs: Value, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        RunReport {
            schema: SCHEMA,
            command: command.to_string(),
            inputs,
            outputs,
            checks,
            passed,
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
