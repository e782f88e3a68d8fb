use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

/// An ordered list of fields, printed as `key: value` lines or one JSON object.
#[derive(Default)]
pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    /// Text rendered as an indented block; always newline-terminated.
    pub fn block(&mut self, key: &str, text: impl ToString) -> &mut Self {
        let mut text = text.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        self.set(key, Value::String(text))
    }

    pub fn opt<T: Into<Value>>(&mut self, key: &str, value: Option<T>) -> &mut Self {
        self.set(key, value.map(Into::into).unwrap_or(Value::Null))
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return format!("{}\n", Value::Object(self.fields.clone()));
        }
        let mut out = String::new();
        for (key, value) in &self.fields {
            match value {
                Value::String(s) if s.contains('\n') => {
                    let _ = writeln!(out, "{key}:");
                    for line in s.lines() {
                        let _ = writeln!(out, "  {line}");
                    }
                }
                Value::String(s) => {
                    let _ = writeln!(out, "{key}: {s}");
                }
                Value::Null => {
                    let _ = writeln!(out, "{key}: none");
                }
                other => {
                    let _ = writeln!(out, "{key}: {other}");
                }
            }
        }
        out
    }
}

/// One per run; written to stderr or to `--record`.
#[derive(Serialize)]
pub struct RunRecord {
    pub command: String,
    pub arguments: Vec<String>,
    pub seed: u64,
    pub version: &'static str,
    pub wall_time_ms: f64,
    pub exit_code: i32,
    pub summary: String,
    pub artifacts: Vec<String>,
}
