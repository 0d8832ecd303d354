//! Machine-readable reports and their text rendering.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContextInfo {
    pub mode: String,
    pub setting: String,
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub monomial: String,
    pub series: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    /// Which trace the step belongs to (`0` unless two traces are reported).
    pub branch: usize,
    pub step: String,
    pub operator: String,
    pub head: String,
    pub result: String,
    pub distance: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub context: Option<ContextInfo>,
    pub verdict: String,
    pub truncation: Option<u32>,
    pub obstructions: Vec<String>,
    pub witnesses: Vec<Witness>,
    pub trace: Vec<TraceStep>,
    pub exit: i32,
    /// Command-specific payload.
    pub data: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str, context: Option<ContextInfo>) -> Self {
        Self {
            command: command.to_string(),
            context,
            verdict: String::new(),
            truncation: None,
            obstructions: Vec::new(),
            witnesses: Vec::new(),
            trace: Vec::new(),
            exit: 0,
            data: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(self.verdict.clone());
        if !self.obstructions.is_empty() {
            line(format!("obstructions: {}", self.obstructions.join(", ")));
        }
        for w in &self.witnesses {
            line(format!("  {}: {}", w.monomial, w.series));
        }
        let mut branch = None;
        for s in &self.trace {
            if branch != Some(s.branch) {
                branch = Some(s.branch);
                line(format!("trace {}:", s.branch + 1));
            }
            line(format!("  {} [{} on {}] -> {}   delta = {}", s.step, s.operator, s.head, s.result, s.distance));
        }
        for (k, v) in &self.data {
            match v {
                Value::String(s) => line(format!("{k}: {s}")),
                Value::Array(items) => {
                    line(format!("{k}:"));
                    for item in items {
                        match item {
                            Value::String(s) => line(format!("  {s}")),
                            other => line(format!("  {other}")),
                        }
                    }
                }
                other => line(format!("{k}: {other}")),
            }
        }
        out
    }
}
