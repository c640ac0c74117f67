//! Batch front end for `locaug`: one JSON job in, one JSON document out.
//!
//! A job names an operation, a ring description, the truncation order and
//! the operands:
//!
//! ```json
//! {"operation": "det", "order": 3, "ring": {"kind": "rationals"},
//!  "operands": {"matrix": {"n": 2, "entries": [["1 + x", "0"], ["0", "1"]]}}}
//! ```
//!
//! Exit codes: 0 on success, 1 when the job is malformed, 2 when the
//! operation itself fails (for example a matrix that is not invertible).

mod ops;
mod selftest;

use serde::Deserialize;
use serde_json::{json, Map, Value};

pub use selftest::{selftest, Check, SUITES};

pub const OPERATIONS: [&str; 13] = [
    "inv", "mul", "log", "ldu", "det", "cgen", "vaserstein", "cyclog", "coset", "endoclass", "addcheck", "novikov",
    "selftest",
];

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDocument {
    pub operation: String,
    pub order: usize,
    #[serde(default)]
    pub ring: Option<Value>,
    #[serde(default)]
    pub operands: Map<String, Value>,
    #[serde(default)]
    pub seed: u64,
    /// Where the caller wants the result written; `run` itself never
    /// touches the filesystem.
    #[serde(default)]
    pub output: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Domain(#[from] locaug::Error),
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Schema(_) => 1,
            JobError::Domain(e) if e.is_schema_error() => 1,
            JobError::Domain(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            JobError::Schema(_) => "Schema",
            JobError::Domain(e) => e.kind(),
        }
    }

    pub fn to_document(&self) -> Value {
        json!({"error": self.kind(), "message": self.to_string()})
    }
}

pub(crate) fn schema(msg: impl Into<String>) -> JobError {
    JobError::Schema(msg.into())
}

/// Result document and process exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub document: Value,
    pub exit_code: i32,
}

impl Outcome {
    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.document).expect("documents are plain JSON");
        s.push('\n');
        s
    }
}

pub fn parse_job(v: &Value) -> Result<JobDocument, JobError> {
    JobDocument::deserialize(v).map_err(|e| schema(format!("job document: {e}")))
}

/// Validates and runs a raw job document.
pub fn run_value(v: &Value) -> Outcome {
    match parse_job(v) {
        Ok(job) => run(&job),
        Err(e) => failure(&e),
    }
}

fn failure(e: &JobError) -> Outcome {
    Outcome { document: e.to_document(), exit_code: e.exit_code() }
}

pub fn run(job: &JobDocument) -> Outcome {
    match execute(job) {
        Ok((document, ok)) => Outcome { document, exit_code: if ok { 0 } else { 2 } },
        Err(e) => failure(&e),
    }
}

/// The document plus whether every reported check passed.
fn execute(job: &JobDocument) -> Result<(Value, bool), JobError> {
    if !OPERATIONS.contains(&job.operation.as_str()) {
        return Err(schema(format!("unknown operation {:?}", job.operation)));
    }
    if job.operation == "selftest" {
        let mut operands = Operands::new(&job.operands);
        let suite = operands.optional_str("suite")?;
        operands.finish()?;
        return selftest::report(suite.as_deref(), job.seed, job.order);
    }
    let ring = job.ring.as_ref().ok_or_else(|| schema("missing \"ring\""))?;
    let desc = locaug::coeff::parse_ring_description(ring)?;
    let doc = ops::dispatch(&desc, job)?;
    Ok((doc, true))
}

/// Operand map with every key required to be consumed.
pub(crate) struct Operands<'a> {
    map: &'a Map<String, Value>,
    used: Vec<&'a str>,
}

impl<'a> Operands<'a> {
    pub(crate) fn new(map: &'a Map<String, Value>) -> Self {
        Operands { map, used: Vec::new() }
    }

    pub(crate) fn optional(&mut self, key: &str) -> Option<&'a Value> {
        let (k, v) = self.map.get_key_value(key)?;
        self.used.push(k.as_str());
        Some(v)
    }

    pub(crate) fn required(&mut self, key: &str) -> Result<&'a Value, JobError> {
        self.optional(key).ok_or_else(|| schema(format!("missing operand {key:?}")))
    }

    pub(crate) fn optional_str(&mut self, key: &str) -> Result<Option<String>, JobError> {
        match self.optional(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(schema(format!("operand {key:?} must be a string"))),
        }
    }

    pub(crate) fn optional_usize(&mut self, key: &str) -> Result<Option<usize>, JobError> {
        match self.optional(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(|x| Some(x as usize))
                .ok_or_else(|| schema(format!("operand {key:?} must be a nonnegative integer"))),
        }
    }

    pub(crate) fn optional_bool(&mut self, key: &str) -> Result<Option<bool>, JobError> {
        match self.optional(key) {
            None => Ok(None),
            Some(Value::Bool(b)) => Ok(Some(*b)),
            Some(_) => Err(schema(format!("operand {key:?} must be a boolean"))),
        }
    }

    pub(crate) fn finish(self) -> Result<(), JobError> {
        match self.map.keys().find(|k| !self.used.contains(&k.as_str())) {
            Some(k) => Err(schema(format!("unknown operand {k:?}"))),
            None => Ok(()),
        }
    }
}
