//! Human-readable rendering of a report.

use std::fmt::Write;

use serde_json::Value;
use supclass_core::Report;

fn scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn walk(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if scalar(x) || matches!(x, Value::Array(a) if a.iter().all(scalar)) {
                    let _ = writeln!(out, "{pad}{k}: {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    walk(out, x, depth + 1);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if scalar(x) || matches!(x, Value::Array(b) if b.iter().all(scalar)) {
                    let _ = writeln!(out, "{pad}- {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    walk(out, x, depth + 1);
                }
            }
        }
        x => {
            let _ = writeln!(out, "{pad}{}", inline(x));
        }
    }
}

pub fn text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} (q = {}, seed = {}, version {})",
        r.command, r.q, r.seed, r.version
    );
    let _ = writeln!(out, "results:");
    walk(&mut out, &r.results, 1);
    let failed = r.checks.iter().filter(|c| !c.passed()).count();
    let _ = writeln!(
        out,
        "checks: {} passed, {failed} failed",
        r.checks.len() - failed
    );
    for c in &r.checks {
        if c.passed() {
            let _ = writeln!(out, "  pass  {}", c.name);
        } else {
            let _ = writeln!(out, "  FAIL  {}  {}", c.name, c.witness);
        }
    }
    out
}
