//! Exact JSON encodings. Integers beyond 53 bits become decimal strings.

use aql_core::fk::{BasisKey, FkElement};
use aql_core::{FFRep, FpMatrix, IntMatrix, IntPoly, LatticeVector};
use serde_json::{json, Map, Value};

const SAFE: i128 = 1 << 53;

pub fn int(x: impl Into<i128>) -> Value {
    let x = x.into();
    if -SAFE < x && x < SAFE {
        Value::from(x as i64)
    } else {
        Value::String(x.to_string())
    }
}

pub fn uint(x: u128) -> Value {
    if x < SAFE as u128 {
        Value::from(x as u64)
    } else {
        Value::String(x.to_string())
    }
}

pub fn vector(v: &LatticeVector) -> Value {
    Value::Array(v.iter().map(|&x| int(x)).collect())
}

pub fn int_matrix(m: &IntMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(int).collect()))
            .collect(),
    )
}

pub fn fp_matrix(m: &FpMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| Value::from(m.get(i, j))).collect()))
            .collect(),
    )
}

pub fn poly(p: &IntPoly) -> Value {
    json!({
        "coefficients": p.coefficients().iter().map(|&c| int(c)).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

/// Maps keyed by arrow id.
pub fn rep(x: &FFRep) -> Value {
    let maps: Map<String, Value> = x
        .quiver()
        .arrows()
        .iter()
        .zip(x.maps())
        .map(|(a, m)| (a.id.clone(), fp_matrix(m)))
        .collect();
    json!({ "dim": vector(x.dim()), "maps": maps })
}

/// A rational as a number when it is a safe integer, otherwise as `"a/b"`.
pub fn rational(text: String) -> Value {
    match text.parse::<i64>() {
        Ok(n) => int(n),
        Err(_) => Value::String(text),
    }
}

pub fn key(k: &BasisKey) -> Value {
    Value::String(k.to_string())
}

pub fn element(x: &FkElement) -> Value {
    Value::Array(
        x.terms()
            .map(|(k, c)| json!({ "key": key(k), "coefficient": rational(c.to_string()) }))
            .collect(),
    )
}

/// Sorted keys (serde_json's map is ordered), no whitespace.
pub fn canonical(v: &Value) -> String {
    serde_json::to_string(v).expect("a json value always serializes")
}
