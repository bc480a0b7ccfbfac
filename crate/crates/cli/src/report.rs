//! Report values and their text rendering.

use std::fmt::Write;

use incidence::charcalc::Character;
use incidence::exactlin::SparseVec;
use incidence::laws::IdentitySpace;
use incidence::scalar::rat_to_string;
use incidence::{LawBasis, Rat};
use serde_json::{json, Map, Value};

pub type Report = Map<String, Value>;

pub fn rat(r: &Rat) -> Value {
    Value::String(rat_to_string(r))
}

pub fn rats(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat).collect())
}

/// A vector of `A_W` as 1-based free law entries.
pub fn law_vector(basis: &LawBasis, v: &SparseVec<Rat>) -> Value {
    Value::Array(
        v.iter()
            .map(|(p, c)| {
                let [i, j, k] = basis.triple(p);
                json!({"i": i + 1, "j": j + 1, "k": k + 1, "c": rat(c)})
            })
            .collect(),
    )
}

/// A vector of `gl(W)` as 1-based matrix entries.
pub fn gl_vector(m: usize, v: &SparseVec<Rat>) -> Value {
    Value::Array(
        v.iter()
            .map(|(n, c)| json!({"row": n / m + 1, "col": n % m + 1, "c": rat(c)}))
            .collect(),
    )
}

/// A vector of the identity space, or plain 1-based coordinates for custom targets.
pub fn identity_vector(space: Option<&IdentitySpace>, v: &SparseVec<Rat>) -> Value {
    Value::Array(
        v.iter()
            .map(|(n, c)| match space {
                Some(s) => {
                    let [i, j, k, l] = s.coordinate(n);
                    json!({"i": i + 1, "j": j + 1, "k": k + 1, "l": l + 1, "c": rat(c)})
                }
                None => json!({"a": n + 1, "c": rat(c)}),
            })
            .collect(),
    )
}

pub fn plain_vector(v: &SparseVec<Rat>) -> Value {
    Value::Array(v.iter().map(|(n, c)| json!({"a": n + 1, "c": rat(c)})).collect())
}

pub fn character(c: &Character) -> Value {
    Value::Array(c.iter().map(|(w, m)| json!({"weight": w, "mult": m})).collect())
}

pub fn matrix(rows: &[Vec<Rat>]) -> Value {
    Value::Array(rows.iter().map(|r| rats(r)).collect())
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")
        )),
        Value::Object(o) if o.values().all(|x| !x.is_object() && scalar_text(x).is_some()) && o.len() <= 7 => Some(format!(
            "{{{}}}",
            o.iter()
                .map(|(k, x)| format!("{k}: {}", scalar_text(x).unwrap_or_default()))
                .collect::<Vec<_>>()
                .join(", ")
        )),
        Value::Array(a) if a.iter().all(|x| x.is_array() && scalar_text(x).is_some()) && a.len() <= 24 => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn write_value(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar_text(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    let _ = writeln!(out, "{pad}{key}:");
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                write_value(out, k, x, depth + 1);
            }
        }
        Value::Array(a) => {
            for (n, x) in a.iter().enumerate() {
                write_value(out, &format!("[{}]", n + 1), x, depth + 1);
            }
        }
        _ => unreachable!("scalars render inline"),
    }
}

/// Indented `key: value` lines carrying exactly the numbers of the JSON report.
pub fn to_text(report: &Report) -> String {
    let mut out = String::new();
    for (k, v) in report {
        write_value(&mut out, k, v, 0);
    }
    out
}

pub fn to_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}
