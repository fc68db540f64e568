//! Deterministic JSON for command reports: keys sorted, floats printed with
//! 17 significant digits and a lowercase `e` exponent.

use minusord::orders::OrderReport;
use minusord::{Matrix, Projection, ToleranceConfig, Vector};
use serde_json::{json, Map, Value};

pub fn matrix(m: &Matrix) -> Value {
    let rows: Vec<Value> = m
        .row_iter()
        .map(|row| Value::Array(row.iter().map(|z| json!([z.re, z.im])).collect()))
        .collect();
    json!({ "rows": m.nrows(), "cols": m.ncols(), "entries": rows })
}

pub fn vector(v: &Vector) -> Value {
    Value::Array(v.iter().map(|z| json!([z.re, z.im])).collect())
}

fn projection(p: Option<&Projection>) -> Value {
    p.map_or(Value::Null, |p| matrix(&p.matrix))
}

pub fn order_report(r: &OrderReport) -> Value {
    let verdicts: Map<String, Value> = r
        .verdicts
        .iter()
        .map(|(k, v)| ((*k).to_string(), Value::Bool(*v)))
        .collect();
    json!({
        "order": r.order.name(),
        "holds": r.holds,
        "verdicts": verdicts,
        "verdicts_agree": r.verdicts_agree(),
        "rank_data": {
            "rank_a": r.rank_data.rank_a,
            "rank_b": r.rank_data.rank_b,
            "rank_b_minus_a": r.rank_data.rank_b_minus_a,
        },
        "boundary": r.boundary,
        "witness_p": projection(r.witness_p.as_ref()),
        "witness_q": projection(r.witness_q.as_ref()),
    })
}

pub fn tolerance(t: &ToleranceConfig) -> Value {
    json!({
        "rank_rtol": t.rank_rtol,
        "residual_atol": t.residual_atol,
        "angle_gap": t.angle_gap,
    })
}

pub struct Input<'a> {
    pub name: &'a str,
    pub path: &'a str,
    pub shape: (usize, usize),
}

pub fn envelope(
    command: &str,
    inputs: &[Input<'_>],
    tol: &ToleranceConfig,
    result: Value,
    boundary_flags: Vec<String>,
) -> Value {
    let inputs: Vec<Value> = inputs
        .iter()
        .map(|i| json!({ "name": i.name, "path": i.path, "rows": i.shape.0, "cols": i.shape.1 }))
        .collect();
    json!({
        "command": command,
        "inputs": inputs,
        "tolerance": tolerance(tol),
        "result": result,
        "boundary_flags": boundary_flags,
    })
}

/// Renders `v` with two-space indentation and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn indent(out: &mut String, level: usize) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_value(out: &mut String, v: &Value, level: usize) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => out.push_str(&u.to_string()),
            (None, Some(i)) => out.push_str(&i.to_string()),
            _ => out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN))),
        },
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            if items.iter().all(|x| !x.is_array() && !x.is_object()) {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(out, item, level);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                indent(out, level + 1);
                write_value(out, item, level + 1);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            indent(out, level);
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
            for (i, key) in keys.iter().enumerate() {
                indent(out, level + 1);
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push_str(": ");
                write_value(out, &map[*key], level + 1);
                if i + 1 < keys.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            indent(out, level);
            out.push('}');
        }
    }
}
