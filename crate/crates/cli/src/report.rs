//! The JSON report written for every run.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use gailrs::SolverDiagnostics;

/// Reference value a fixture is checked against, with where it came from
/// (`"closed form"` or `"oracle"`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Truth {
    pub value: f64,
    pub source: String,
}

/// One solver run. Field names are part of the output contract.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    pub inputs: Value,
    /// A number, or an object for funappx and funmin.
    pub estimate: Value,
    pub diagnostics: SolverDiagnostics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth: Option<Truth>,
}

/// Output of the `examples` subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExamplesReport {
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub reports: Vec<RunReport>,
}

impl RunReport {
    /// Scalar estimate, if the estimate is a number or has an `fmin` field.
    pub fn scalar(&self) -> Option<f64> {
        self.estimate
            .as_f64()
            .or_else(|| self.estimate.get("fmin").and_then(Value::as_f64))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl ExamplesReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
