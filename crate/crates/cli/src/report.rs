use std::fmt::Display;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// One line of the report stream.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub kind: &'static str,
    pub check: String,
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    pub pass: bool,
    pub millis: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub report: Value,
}

impl Record {
    /// Builds a record from a computation returning `(pass, report)`; errors count as failures.
    pub fn from_result<T: Serialize, E: Display>(
        check: &str,
        case: &str,
        ell: Option<u32>,
        started: Instant,
        result: Result<(bool, T), E>,
    ) -> Self {
        let (pass, report, error) = match result {
            Ok((pass, r)) => (pass, serde_json::to_value(r).unwrap_or(Value::Null), None),
            Err(e) => (false, Value::Null, Some(e.to_string())),
        };
        Record {
            kind: "check",
            check: check.into(),
            case: case.into(),
            ell,
            pass,
            millis: started.elapsed().as_millis(),
            error,
            report,
        }
    }
}

/// Last line of the report stream.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub kind: &'static str,
    pub command: String,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
    pub millis: u128,
}

impl Summary {
    pub fn new(command: String, records: &[Record], started: Instant) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        Summary {
            kind: "summary",
            command,
            checks: records.len(),
            passed,
            failed: records.len() - passed,
            pass: passed == records.len(),
            millis: started.elapsed().as_millis(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(pass: bool) -> Record {
        let r: Result<(bool, ()), String> = if pass { Ok((true, ())) } else { Err("pole".into()) };
        Record::from_result("frobenius", "case", Some(3), Instant::now(), r)
    }

    #[test]
    fn failures_set_exit_code() {
        let t = Instant::now();
        assert_eq!(Summary::new("x".into(), &[record(true)], t).exit_code(), 0);
        let s = Summary::new("x".into(), &[record(true), record(false)], t);
        assert_eq!((s.failed, s.exit_code()), (1, 1));
        assert_eq!(record(false).error.as_deref(), Some("pole"));
    }
}
