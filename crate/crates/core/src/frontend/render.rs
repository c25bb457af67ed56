//! Text and JSON serialization of command output.

use serde_json::{json, Map, Value};

use crate::frontend::compute::Output;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    /// Include elapsed times; off for byte-stable output.
    pub timings: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { timings: true }
    }
}

/// `{input, results: [{op, status, detail}], timings_ms, warnings}`; keys
/// sorted, so output is byte-stable apart from the timing values.
pub fn render_json(out: &Output, opts: RenderOptions) -> String {
    let results: Vec<Value> = out
        .results
        .iter()
        .map(|r| json!({"op": r.op, "status": r.status, "detail": r.detail}))
        .collect();
    let per: Vec<u64> = out
        .results
        .iter()
        .map(|r| if opts.timings { r.elapsed_ms } else { 0 })
        .collect();
    let total: u64 = per.iter().sum();
    let v = json!({
        "input": out.input,
        "results": results,
        "timings_ms": {"total": total, "per_result": per},
        "warnings": out.warnings,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn is_verdict_status(s: &str) -> bool {
    matches!(s, "pass" | "fail" | "skipped" | "resource-limit")
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            // rings print as `x:1, y:-1`
            let parts: Vec<String> = items
                .iter()
                .map(|it| match (it.get("name"), it.get("weight")) {
                    (Some(Value::String(n)), Some(w)) => format!("{n}:{w}"),
                    _ => inline(it),
                })
                .collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(m) => {
            let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}: {}", inline(v))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn detail_lines(m: &Map<String, Value>, indent: &str, s: &mut String) {
    for (k, v) in m {
        match v {
            Value::Object(inner) if k == "pruned" => {
                s.push_str(&format!("{indent}{k}:\n"));
                detail_lines(inner, &format!("{indent}  "), s);
            }
            _ => s.push_str(&format!("{indent}{k}: {}\n", inline(v))),
        }
    }
}

pub fn render_text(out: &Output, opts: RenderOptions) -> String {
    let mut s = format!("input: {}\n", out.input);
    let mut verdicts = 0;
    for r in &out.results {
        let timing = if opts.timings {
            format!("  ({} ms)", r.elapsed_ms)
        } else {
            String::new()
        };
        if is_verdict_status(&r.status) || r.op == "validation" {
            verdicts += 1;
            let entry = r
                .detail
                .get("entry")
                .and_then(Value::as_str)
                .map(|e| format!("[{e}] "))
                .unwrap_or_default();
            s.push_str(&format!("{:<15}{entry}{}{timing}\n", r.status, r.op));
            for key in ["verdict", "witness", "reason", "message"] {
                if let Some(Value::String(v)) = r.detail.get(key) {
                    s.push_str(&format!("               {key}: {v}\n"));
                }
            }
        } else {
            s.push_str(&format!("{}{timing}\n", r.op));
            if let Value::Object(m) = &r.detail {
                detail_lines(m, "  ", &mut s);
            }
        }
    }
    for w in &out.warnings {
        s.push_str(&format!("warning: {w}\n"));
    }
    if verdicts > 0 || out.results.is_empty() {
        let (pass, fail, skipped, limited) = out.summary_counts();
        let n = out.results.len();
        let breakdown = format!("{pass} pass, {fail} fail, {skipped} skipped, {limited} resource-limit");
        if fail == 0 && limited == 0 && n == pass + skipped {
            s.push_str(&format!("all {n} properties passed or skipped ({breakdown})\n"));
        } else {
            s.push_str(&format!("{} of {n} properties did not pass ({breakdown})\n", n - pass - skipped));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::compute::OutputItem;

    #[test]
    fn empty_report() {
        let out = Output::default();
        assert!(render_text(&out, RenderOptions::default()).contains("all 0 properties"));
        let j: Value = serde_json::from_str(&render_json(&out, RenderOptions::default())).unwrap();
        assert_eq!(j["results"], json!([]));
    }

    #[test]
    fn pass_and_fail_lines() {
        let out = Output {
            input: "x".into(),
            results: vec![
                OutputItem {
                    op: "P1-fiber1-diagonal".into(),
                    status: "pass".into(),
                    elapsed_ms: 7,
                    detail: json!({}),
                },
                OutputItem {
                    op: "P2-fiber0-product".into(),
                    status: "fail".into(),
                    elapsed_ms: 1,
                    detail: json!({"witness": "y' lies in the right side only"}),
                },
            ],
            warnings: vec![],
        };
        let t = render_text(&out, RenderOptions::default());
        assert!(t.contains("P1-fiber1-diagonal  (7 ms)"), "{t}");
        assert!(t.contains("witness: y' lies in the right side only"));
        assert!(t.contains("1 of 2 properties did not pass"));
    }
}
