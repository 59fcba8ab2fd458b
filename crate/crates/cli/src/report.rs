//! Reports: a header with the ring and every bound in force, a body of
//! text lines, and a structured result for `--json`.

use serde::Serialize;
use serde_json::Value;

use crate::problem::ProblemFile;

/// Exit codes: 0 ok, 1 mathematical negative, 2 inconclusive at a bound,
/// 3 usage error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Negative,
    Inconclusive,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::Inconclusive => 2,
        }
    }

    /// The worse of two outcomes; a negative dominates an inconclusive one.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Negative, _) | (_, Status::Negative) => Status::Negative,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bound {
    pub name: String,
    pub value: Value,
    pub default: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RingHeader {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub shifts: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub ring: RingHeader,
    pub bounds: Vec<Bound>,
    pub status: Status,
    pub exit_code: i32,
    pub result: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: &str, problem: &ProblemFile) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            ring: RingHeader {
                n: problem.n(),
                k: problem.k(),
                r: problem.r(),
                shifts: problem.shifts().columns().to_vec(),
            },
            bounds: Vec::new(),
            status: Status::Ok,
            exit_code: 0,
            result: Value::Null,
            lines: Vec::new(),
        }
    }

    pub fn bound(&mut self, name: &str, value: impl Into<Value>, default: bool) {
        self.bounds.push(Bound {
            name: name.into(),
            value: value.into(),
            default,
        });
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn finish(&mut self, status: Status, result: Value) {
        self.status = self.status.and(status);
        self.exit_code = self.status.code();
        self.result = result;
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("# dfan {}\n# input: {}\n", self.command, self.input);
        out.push_str(&format!(
            "# ring: n={} k={} r={} shifts={}\n",
            self.ring.n,
            self.ring.k,
            self.ring.r,
            serde_json::to_string(&self.ring.shifts).expect("integers serialize")
        ));
        let bounds: Vec<String> = self
            .bounds
            .iter()
            .map(|b| {
                let v = match &b.value {
                    Value::String(s) => s.clone(),
                    v => v.to_string(),
                };
                if b.default {
                    format!("{}={v} (default)", b.name)
                } else {
                    format!("{}={v}", b.name)
                }
            })
            .collect();
        if bounds.is_empty() {
            out.push_str("# bounds: none\n");
        } else {
            out.push_str(&format!("# bounds: {}\n", bounds.join(", ")));
        }
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        let status = match self.status {
            Status::Ok => "ok",
            Status::Negative => "negative",
            Status::Inconclusive => "inconclusive",
        };
        out.push_str(&format!("status: {status}\n"));
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
