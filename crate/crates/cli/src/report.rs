use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use corings::linalg::{Matrix, RankWitness, Scalar};
use corings::validation::Validation;

use crate::instance::{raw_matrix, RawScalar};

pub fn scalar(x: &Scalar) -> Value {
    serde_json::to_value(RawScalar::from_scalar(x)).expect("scalars serialize")
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    serde_json::to_value(raw_matrix(m)).expect("matrices serialize")
}

pub fn vectors(vs: &[Vec<Scalar>]) -> Value {
    Value::Array(vs.iter().map(|v| vector(v)).collect())
}

pub fn rank_witness(w: &RankWitness) -> Value {
    json!({ "rank": w.rank, "augmented_rank": w.augmented_rank })
}

pub fn validation(v: &Validation) -> Value {
    json!({
        "valid": v.is_valid(),
        "violations": v.violations.iter().map(|x| json!({ "axiom": x.axiom, "at": x.at })).collect::<Vec<_>>(),
    })
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Key-value lines for `--text`; nested values stay compact JSON.
pub fn render_text(body: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = body {
        write_map(&mut out, map, "");
    } else {
        out.push_str(&body.to_string());
        out.push('\n');
    }
    out
}

fn write_map(out: &mut String, map: &Map<String, Value>, prefix: &str) {
    for (k, v) in map {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(inner) if !inner.is_empty() => write_map(out, inner, &key),
            Value::String(s) => out.push_str(&format!("{key}: {s}\n")),
            other => out.push_str(&format!("{key}: {other}\n")),
        }
    }
}
