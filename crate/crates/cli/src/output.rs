//! Exit codes and the JSON envelope shared by every subcommand.
//!
//! JSON output is a single object with keys `version`, `inputs`, `results`
//! and `checks`. `checks` maps a check name to `true` (passed), `false`
//! (failed) or `null` (not applicable). Keys are emitted in sorted order.

use serde_json::{json, Map, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    pub fn new(stdout: String, ok: bool) -> Self {
        Self { stdout, code: if ok { EXIT_OK } else { EXIT_VIOLATION } }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: EXIT_INPUT }
    }
}

impl From<npseq::Error> for Failure {
    fn from(e: npseq::Error) -> Self {
        let code = match e {
            npseq::Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Self { message: e.to_string(), code }
    }
}

pub type CmdResult = Result<Outcome, Failure>;

pub fn envelope(inputs: Value, results: Value, checks: &[(&str, Option<bool>)]) -> String {
    let checks: Map<String, Value> =
        checks.iter().map(|(name, c)| (name.to_string(), c.map_or(Value::Null, Value::Bool))).collect();
    let doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "inputs": inputs,
        "results": results,
        "checks": checks,
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("envelope serializes");
    out.push('\n');
    out
}

pub fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

pub fn check_word(c: Option<bool>) -> &'static str {
    match c {
        Some(true) => "pass",
        Some(false) => "FAIL",
        None => "n/a",
    }
}

pub fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}
