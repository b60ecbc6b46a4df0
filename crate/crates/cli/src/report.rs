use crate::args::Format;
use serde_json::{json, Value};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    DegradedPrecision,
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::DegradedPrecision => 3,
        }
    }

    /// The worse of two outcomes.
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Failed, _) | (_, Failed) => Failed,
            (DegradedPrecision, _) | (_, DegradedPrecision) => DegradedPrecision,
            _ => Ok,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::DegradedPrecision => "degraded-precision",
            Status::Failed => "failed",
        })
    }
}

/// What a command produced, in all three renderings.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub request: Value,
    pub result: Value,
    pub certification: Value,
    pub status: Status,
    pub diagnostics: Vec<String>,
    pub text: String,
    pub csv: Option<String>,
}

impl Report {
    pub fn new(command: &str, request: Value) -> Self {
        Report {
            command: command.into(),
            request,
            result: Value::Null,
            certification: json!({}),
            status: Status::Ok,
            diagnostics: Vec::new(),
            text: String::new(),
            csv: None,
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.status = self.status.and(Status::Failed);
        self.diagnostics.push(msg);
    }

    pub fn degrade(&mut self, msg: String) {
        self.status = self.status.and(Status::DegradedPrecision);
        self.diagnostics.push(msg);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "request": self.request,
            "result": self.result,
            "certification": self.certification,
            "status": self.status.to_string(),
            "diagnostics": self.diagnostics,
        })
    }

    /// Serialized bytes; `None` when the format does not apply.
    pub fn emit(&self, format: Format) -> Option<String> {
        match format {
            Format::Json => Some(serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize") + "\n"),
            Format::Csv => self.csv.clone(),
            Format::Text => {
                let mut s = self.text.clone();
                for d in &self.diagnostics {
                    s.push_str(&format!("note: {d}\n"));
                }
                s.push_str(&format!("status: {}\n", self.status));
                Some(s)
            }
        }
    }
}
