//! The report envelope and its human-readable rendering.

use serde_json::{json, Value};
use topcube::Error;

const INLINE_WIDTH: usize = 72;

pub struct Report {
    pub command: Vec<String>,
    pub outcome: Outcome,
    pub payload: Value,
    pub elapsed_ms: Option<u64>,
}

pub enum Outcome {
    Ok,
    /// The command ran to completion but the property it checks failed.
    Failed,
    Error { code: &'static str, message: String },
}

impl Outcome {
    pub fn error(e: &Error) -> Self {
        Outcome::Error {
            code: e.code(),
            message: e.to_string(),
        }
    }

    pub fn exit_code(&self, usage: bool) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Failed => 1,
            Outcome::Error { .. } if usage => 2,
            Outcome::Error { .. } => 1,
        }
    }
}

impl Report {
    pub fn to_json(&self) -> Value {
        let outcome = match &self.outcome {
            Outcome::Ok => json!("ok"),
            Outcome::Failed => json!("failed"),
            Outcome::Error { code, message } => json!({"error": code, "message": message}),
        };
        json!({
            "command": self.command,
            "outcome": outcome,
            "payload": self.payload,
            "elapsed_ms": self.elapsed_ms,
        })
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        match &self.outcome {
            Outcome::Error { code, message } => {
                out.push_str(&format!("error ({code}): {message}\n"));
            }
            outcome => {
                write_value(&mut out, &self.payload, 0);
                if matches!(outcome, Outcome::Failed) {
                    out.push_str("result: FAILED\n");
                }
            }
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
        out
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Scalars, lists of scalars and short values stay on one line.
fn fits(v: &Value) -> bool {
    match v {
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => true,
        Value::Array(_) | Value::Object(_) => inline(v).chars().count() <= INLINE_WIDTH,
        _ => true,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if fits(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_value(out, x, depth + 1);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if fits(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_value(out, x, depth + 1);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_values_indent() {
        let mut out = String::new();
        write_value(
            &mut out,
            &json!({"a": 1, "b": {"c": [1, 2]}, "d": [{"e": null, "f": "x".repeat(80)}]}),
            0,
        );
        let f = "x".repeat(80);
        assert_eq!(out, format!("a: 1\nb: {{\"c\":[1,2]}}\nd:\n  -\n    e: -\n    f: {f}\n"));
    }

    #[test]
    fn exit_codes() {
        let e = Error::NotSeparable("x".into());
        assert_eq!(Outcome::error(&e).exit_code(e.is_usage()), 1);
        let e = Error::Validation("x".into());
        assert_eq!(Outcome::error(&e).exit_code(e.is_usage()), 2);
        assert_eq!(Outcome::Ok.exit_code(false), 0);
    }
}
