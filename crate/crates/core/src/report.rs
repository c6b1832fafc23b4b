//! Machine-readable run reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bounds::{BoundRow, BoundStatus};
use crate::error::Error;
use crate::width::ValueInterval;

pub const SCHEMA_ID: &str = "ngw-report/1";

/// JSON Schema (draft 7) of [`Report`].
pub const SCHEMA_JSON: &str = include_str!("../schema/report.v1.schema.json");

/// Overall result of a command; decides the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Ok,
    Usage,
    Capacity,
    BoundViolation,
    Disagreement,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Usage => 1,
            Outcome::Capacity => 2,
            Outcome::BoundViolation => 3,
            Outcome::Disagreement => 4,
        }
    }

    pub fn of_error(e: &Error) -> Outcome {
        match e {
            Error::Capacity { .. } | Error::StateLimit { .. } => Outcome::Capacity,
            Error::BoundViolation(_) => Outcome::BoundViolation,
            Error::Disagreement(_) => Outcome::Disagreement,
            Error::Domain(_)
            | Error::Parse { .. }
            | Error::Inapplicable(_)
            | Error::Infeasible(_)
            | Error::Io(_) => Outcome::Usage,
        }
    }

    /// The more serious of two outcomes.
    pub fn worst(self, other: Outcome) -> Outcome {
        self.max(other)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(flatten)]
    pub row: BoundRow,
    pub status: BoundStatus,
}

/// One entry of the verification suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub outcome: Outcome,
    pub detail: String,
}

/// Everything except `timing` is a pure function of the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    pub seed: u64,
    pub query: Value,
    pub result: Value,
    pub bounds: Vec<BoundReport>,
    pub checks: Vec<CheckOutcome>,
    pub states_explored: Option<u64>,
    pub outcome: Outcome,
    pub error: Option<String>,
    pub timing: Timing,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
    #[serde(default)]
    pub checks_ms: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: &str, seed: u64, query: Value) -> Self {
        Report {
            schema: SCHEMA_ID.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            seed,
            query,
            result: Value::Null,
            bounds: Vec::new(),
            checks: Vec::new(),
            states_explored: None,
            outcome: Outcome::Ok,
            error: None,
            timing: Timing::default(),
        }
    }

    /// Attaches catalogue rows judged against `value`; an assertable row
    /// that is violated marks the report.
    pub fn add_bounds(&mut self, rows: Vec<BoundRow>, value: ValueInterval) {
        for row in rows {
            let status = row.status(value);
            if status == BoundStatus::Violated {
                self.outcome = self.outcome.worst(Outcome::BoundViolation);
            }
            self.bounds.push(BoundReport { row, status });
        }
    }

    pub fn fail(&mut self, e: &Error) {
        self.outcome = self.outcome.worst(Outcome::of_error(e));
        self.error = Some(e.to_string());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
