use std::fmt;
use std::process::ExitCode;
use std::str::FromStr;

use serde_json::{json, Map, Value};
use termirial_core::loopnest::ParseError;
use termirial_core::GuardError;

pub const EXIT_IDENTITY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

/// Inclusive integer range written `a..b`, or a single value `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub start: i64,
    pub end: i64,
}

impl Range {
    pub fn iter(self) -> std::ops::RangeInclusive<i64> {
        self.start..=self.end
    }

    pub fn len(self) -> u64 {
        (self.end - self.start + 1).max(0) as u64
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("'{t}' is not an integer"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range {start}..{end}"));
        }
        Ok(Range { start, end })
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Insert a space every three digits from the right.
pub fn group_digits(digits: &str) -> String {
    let (sign, digits) = match digits.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", digits),
    };
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(' ');
        }
        out.push(c);
    }
    format!("{sign}{out}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
    pub position: Option<(usize, usize)>,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            kind: "Usage",
            message: message.into(),
            position: None,
        }
    }
}

impl From<GuardError> for CliError {
    fn from(e: GuardError) -> Self {
        let (code, kind) = match e {
            GuardError::BudgetExceeded { .. } => (EXIT_GUARD, "BudgetExceeded"),
            GuardError::SizeLimit { .. } => (EXIT_GUARD, "SizeLimit"),
            GuardError::OutOfDomain(_) => (EXIT_USAGE, "OutOfDomain"),
        };
        CliError {
            code,
            kind,
            message: e.to_string(),
            position: None,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError {
            code: EXIT_USAGE,
            kind: e.kind.name(),
            message: e.to_string(),
            position: Some((e.line, e.column)),
        }
    }
}

/// Everything one invocation produces.
#[derive(Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub checks: Vec<(String, bool)>,
    pub text: String,
    pub error: Option<CliError>,
    pub exit: u8,
}

impl Outcome {
    pub fn new(command: &'static str) -> Self {
        Outcome {
            command,
            inputs: Map::new(),
            result: Value::Null,
            checks: Vec::new(),
            text: String::new(),
            error: None,
            exit: 0,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn fail(mut self, err: impl Into<CliError>) -> Self {
        let err = err.into();
        self.exit = err.code;
        self.error = Some(err);
        self
    }

    pub fn envelope(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|(name, pass)| json!({ "name": name, "pass": pass }))
            .collect();
        let mut obj = json!({
            "command": self.command,
            "inputs": Value::Object(self.inputs.clone()),
            "result": self.result,
            "checks": checks,
        });
        if let Some(e) = &self.error {
            obj["error"] = json!({
                "kind": e.kind,
                "message": e.message,
                "line": e.position.map(|p| p.0),
                "column": e.position.map(|p| p.1),
            });
        }
        obj
    }

    pub fn emit(self, json: bool) -> ExitCode {
        if json {
            println!("{}", self.envelope());
        } else {
            print!("{}", self.text);
            if let Some(e) = &self.error {
                eprintln!("error: {}", e.message);
            }
        }
        ExitCode::from(self.exit)
    }
}
