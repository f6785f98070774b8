use std::fmt::Write;

use serde_json::Value;

use super::{CommandResult, Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Human => human(report),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        // Matrices and other arrays of flat arrays stay on one line.
        Value::Array(xs) if xs.iter().all(|x| matches!(x, Value::Array(r) if r.iter().all(|y| !y.is_object() && !y.is_array()))) => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn block(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        block(out, x, indent + 2);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}[{i}]");
                        block(out, x, indent + 2);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

fn suite_block(out: &mut String, v: &Value) {
    let crit = v.get("criteria").and_then(Value::as_array).cloned().unwrap_or_default();
    let _ = writeln!(out, "    passed {} / {}", v.get("passed").and_then(Value::as_u64).unwrap_or(0), crit.len());
    for c in &crit {
        let id = c.get("id").and_then(Value::as_u64).unwrap_or(0);
        let pass = c.get("pass").and_then(Value::as_bool).unwrap_or(false);
        let title = c.get("title").and_then(Value::as_str).unwrap_or("");
        let cases = c.get("cases").and_then(Value::as_u64).unwrap_or(0);
        let failed = c.get("failed").and_then(Value::as_u64).unwrap_or(0);
        let _ = writeln!(out, "    {id:>2}  {}  {title:<32} {cases:>4} checks {failed:>3} failed", if pass { "PASS" } else { "FAIL" });
    }
    for c in &crit {
        let notes = c.get("notes").and_then(Value::as_array).cloned().unwrap_or_default();
        let failures = c.get("failures").and_then(Value::as_array).cloned().unwrap_or_default();
        if notes.is_empty() && failures.is_empty() {
            continue;
        }
        let _ = writeln!(out, "    criterion {}:", c.get("id").and_then(Value::as_u64).unwrap_or(0));
        for n in notes {
            let _ = writeln!(out, "      {}", n.as_str().unwrap_or(""));
        }
        for f in failures {
            let _ = writeln!(out, "      failure: {}", f.as_str().unwrap_or(""));
        }
    }
}

fn result_block(out: &mut String, r: &CommandResult) {
    let target = r.input.get("object").and_then(Value::as_str).map(|o| format!(" {o}")).unwrap_or_default();
    let status = match r.status {
        Status::Ok => "ok",
        Status::Failed => "FAILED",
    };
    let time = r.elapsed_us.map(|us| format!(" ({:.3} ms)", us as f64 / 1000.0)).unwrap_or_default();
    let _ = writeln!(out, "[{}] {}{target}: {status}{time}", r.index, r.op);
    if let Some(e) = &r.error {
        let _ = writeln!(out, "    error: {e}");
    }
    if let Some(v) = &r.value {
        if r.op == "verify-paper" {
            suite_block(out, v);
        } else {
            block(out, v, 4);
        }
    }
}

fn human(report: &Report) -> String {
    let h = &report.header;
    let o = &h.options;
    let mut out = format!(
        "# {} {} schema {} seed {} precision {} d_max {} e_max {}\n",
        h.tool,
        h.version,
        h.schema,
        o.seed,
        o.precision,
        o.d_max,
        o.e_max.map_or("-".into(), |e| e.to_string())
    );
    for r in &report.results {
        result_block(&mut out, r);
    }
    out
}
