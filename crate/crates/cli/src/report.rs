use std::fmt::Write as _;
use std::time::Duration;

use jordan_core::exactmat::MatError;
use jordan_core::heis::HeisError;
use jordan_core::numth::NumthError;
use jordan_core::quotient::QuotError;
use jordan_core::suite::Status;
use jordan_core::wang::WangError;
use jordan_core::wire::WireError;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    BadInput(String),
    #[error("INTERNAL: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::BadInput(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

macro_rules! bad_input_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::BadInput(e.to_string())
            }
        }
    )*};
}

bad_input_from!(WireError, HeisError, WangError, MatError, NumthError);

impl From<QuotError> for CliError {
    fn from(e: QuotError) -> Self {
        match e {
            QuotError::NotAGroup(_) => CliError::Internal(e.to_string()),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

/// One verified statement. `inputs` names what was checked; it may be empty
/// when the command echo already says it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: String,
    pub observed: String,
    pub bound: String,
    pub status: Status,
    pub elapsed: Option<Duration>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, observed: impl Into<String>, bound: impl Into<String>, ok: bool) -> Self {
        CheckRecord {
            name: name.into(),
            inputs: String::new(),
            observed: observed.into(),
            bound: bound.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            elapsed: None,
        }
    }

    pub fn with_inputs(mut self, inputs: impl Into<String>) -> Self {
        self.inputs = inputs.into();
        self
    }

    fn line(&self, timings: bool) -> String {
        let mut s = format!("{} {}: {} (bound {}", self.status.code(), self.name, self.observed, self.bound);
        if !self.inputs.is_empty() {
            let _ = write!(s, "; inputs {}", self.inputs);
        }
        s.push(')');
        if let (true, Some(t)) = (timings, self.elapsed) {
            let _ = write!(s, " [{:.2}s]", t.as_secs_f64());
        }
        s
    }

    fn json(&self, timings: bool) -> Value {
        let mut v = json!({
            "name": self.name,
            "inputs": self.inputs,
            "observed": self.observed,
            "bound": self.bound,
            "status": self.status.code(),
        });
        if let (true, Some(t)) = (timings, self.elapsed) {
            v["wall_time_ms"] = json!(t.as_millis() as u64);
        }
        v
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

/// Everything a command produced. Rendering is byte-stable unless timings
/// are requested.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub result: Value,
    /// Human-readable lines printed before the checks in text mode.
    pub text: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub elapsed: Duration,
    pub json: bool,
    pub timings: bool,
}

impl RunReport {
    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skip => s.skip += 1,
            }
        }
        s
    }

    pub fn exit_code(&self) -> u8 {
        if self.summary().fail > 0 {
            1
        } else {
            0
        }
    }

    pub fn render(&self) -> String {
        let s = self.summary();
        if self.json {
            let mut v = json!({
                "command": self.command,
                "result": self.result,
                "checks": self.checks.iter().map(|c| c.json(self.timings)).collect::<Vec<_>>(),
                "summary": { "pass": s.pass, "fail": s.fail, "skip": s.skip },
            });
            if self.timings {
                v["wall_time_ms"] = json!(self.elapsed.as_millis() as u64);
            }
            return format!("{v}\n");
        }
        let mut out = String::new();
        for line in &self.text {
            out.push_str(line);
            out.push('\n');
        }
        for c in &self.checks {
            out.push_str(&c.line(self.timings));
            out.push('\n');
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "summary: {} passed, {} failed, {} skipped", s.pass, s.fail, s.skip);
        }
        if self.timings {
            let _ = writeln!(out, "wall time: {:.2}s", self.elapsed.as_secs_f64());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(checks: Vec<CheckRecord>) -> RunReport {
        RunReport {
            command: "x".into(),
            result: json!(null),
            text: vec!["hello".into()],
            checks,
            elapsed: Duration::from_millis(1234),
            json: false,
            timings: false,
        }
    }

    #[test]
    fn exit_code_follows_failures() {
        let pass = CheckRecord::new("a", "1", "2", true);
        let fail = CheckRecord::new("b", "3", "2", false);
        let mut skip = pass.clone();
        skip.status = Status::Skip;
        assert_eq!(report(vec![pass.clone(), skip.clone()]).exit_code(), 0);
        let r = report(vec![pass, fail, skip]);
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.summary(), Summary { pass: 1, fail: 1, skip: 1 });
    }

    #[test]
    fn text_has_no_timing_unless_asked() {
        let mut r = report(vec![CheckRecord::new("a", "1", "2", true).with_inputs("seed 1")]);
        assert_eq!(r.render(), "hello\nPASS a: 1 (bound 2; inputs seed 1)\nsummary: 1 passed, 0 failed, 0 skipped\n");
        r.timings = true;
        assert!(r.render().ends_with("wall time: 1.23s\n"));
        r.json = true;
        let v: Value = serde_json::from_str(&r.render()).unwrap();
        assert_eq!(v["wall_time_ms"], json!(1234));
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::Usage("u".into()).exit_code(), 2);
        assert_eq!(CliError::from(WireError("w".into())).exit_code(), 2);
        assert_eq!(CliError::from(QuotError::NotAGroup("t".into())).exit_code(), 3);
        assert_eq!(CliError::Internal("i".into()).to_string(), "INTERNAL: i");
    }
}
