//! Run reports and their deterministic JSON rendering.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const TOOLKIT: &str = concat!("wefe ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub toolkit: &'static str,
    pub command: String,
    pub entries: Vec<String>,
    pub status: Status,
    pub body: Value,
    pub errors: Vec<ErrorBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Mismatch,
    EvaluationError,
    BadInput,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Mismatch => 2,
            Status::EvaluationError => 3,
            Status::BadInput => 4,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBlock {
    pub entry: Option<String>,
    pub kind: String,
    pub message: String,
}

impl ErrorBlock {
    pub fn new(entry: Option<&str>, kind: &str, message: impl Into<String>) -> Self {
        ErrorBlock {
            entry: entry.map(str::to_string),
            kind: kind.to_string(),
            message: message.into(),
        }
    }
}

/// Sorted keys, two-space indent, floats with 12 significant digits.
pub fn to_json(v: &impl Serialize) -> String {
    let value = serde_json::to_value(v).expect("report values serialize");
    let mut out = String::new();
    emit(&value, 0, &mut out);
    out.push('\n');
    out
}

fn emit(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&float(n.as_f64().unwrap_or(f64::NAN)));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                emit(item, depth + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(depth + 1), Value::String((*key).clone()));
                emit(&map[*key], depth + 1, out);
                out.push_str(if k + 1 < keys.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
    }
}

pub fn float(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    if x == 0.0 {
        return "0.0".to_string();
    }
    format!("{x:.11e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_sorted_and_floats_fixed() {
        let v = json!({"b": 1.0, "a": [0.1, 2], "c": {"z": -0.0, "y": 1e-20}});
        let s = to_json(&v);
        assert_eq!(
            s,
            "{\n  \"a\": [\n    1.00000000000e-1,\n    2\n  ],\n  \"b\": 1.00000000000e0,\n  \"c\": {\n    \"y\": 1.00000000000e-20,\n    \"z\": 0.0\n  }\n}\n"
        );
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["a"][0], json!(0.1));
    }

    #[test]
    fn non_finite_becomes_null() {
        assert_eq!(float(f64::INFINITY), "null");
    }
}
