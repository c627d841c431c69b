use std::fmt::Write as _;

use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

pub const CM_WARNING: &str =
    "Gorenstein verdicts assume the normal tangent cone is Cohen-Macaulay (not checkable from the graph)";

/// One machine-readable document per invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    command: String,
    inputs: Map<String, Value>,
    results: Map<String, Value>,
    verdicts: Map<String, Value>,
    warnings: Vec<String>,
    failed: bool,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: Map::new(),
            results: Map::new(),
            verdicts: Map::new(),
            warnings: Vec::new(),
            failed: false,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn verdict(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.verdicts.insert(key.to_string(), value.into());
        self
    }

    pub fn warn(&mut self, message: impl Into<String>) -> &mut Self {
        let message = message.into();
        if !self.warnings.contains(&message) {
            self.warnings.push(message);
        }
        self
    }

    /// Marks the report as a verification failure (exit code 3).
    pub fn fail(&mut self) -> &mut Self {
        self.failed = true;
        self
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn command(&self) -> &str {
        &self.command
    }

    pub fn results(&self) -> &Map<String, Value> {
        &self.results
    }

    pub fn verdicts(&self) -> &Map<String, Value> {
        &self.verdicts
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn to_value(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("schema_version".into(), SCHEMA_VERSION.into());
        doc.insert("command".into(), self.command.clone().into());
        doc.insert("inputs".into(), Value::Object(self.inputs.clone()));
        doc.insert("results".into(), Value::Object(self.results.clone()));
        doc.insert("verdicts".into(), Value::Object(self.verdicts.clone()));
        doc.insert(
            "warnings".into(),
            Value::Array(self.warnings.iter().cloned().map(Value::from).collect()),
        );
        Value::Object(doc)
    }

    /// Sorted keys, two-space indent, trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("serializable");
        s.push('\n');
        s
    }

    /// Indented plain-text rendering of the same document.
    pub fn to_human(&self) -> String {
        let mut out = format!("ntc {}\n", self.command);
        for (name, section) in [
            ("inputs", &self.inputs),
            ("results", &self.results),
            ("verdicts", &self.verdicts),
        ] {
            if section.is_empty() {
                continue;
            }
            let _ = writeln!(out, "{name}:");
            render_map(&mut out, section, 1);
        }
        if !self.warnings.is_empty() {
            out.push_str("warnings:\n");
            for w in &self.warnings {
                let _ = writeln!(out, "  - {w}");
            }
        }
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(m) if m.values().all(is_scalar) => {
            let parts: Vec<String> = m
                .iter()
                .map(|(k, v)| format!("{k}={}", inline(v)))
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn render_map(out: &mut String, m: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    let width = m.keys().map(String::len).max().unwrap_or(0);
    for (k, v) in m {
        match v {
            Value::Object(inner) if !inner.values().all(is_scalar) => {
                let _ = writeln!(out, "{pad}{k}:");
                render_map(out, inner, depth + 1);
            }
            Value::Array(items) if !items.iter().all(is_scalar) => {
                let _ = writeln!(out, "{pad}{k}: ({} entries)", items.len());
                for item in items {
                    match item {
                        Value::Object(inner) => {
                            let _ = writeln!(out, "{pad}  -");
                            render_map(out, inner, depth + 2);
                        }
                        other => {
                            let _ = writeln!(out, "{pad}  - {}", inline(other));
                        }
                    }
                }
            }
            _ => {
                let _ = writeln!(out, "{pad}{k:<width$}  {}", inline(v));
            }
        }
    }
}
