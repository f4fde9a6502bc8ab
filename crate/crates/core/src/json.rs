//! JSON encodings for rationals, vectors, and matrices.
//!
//! Rationals are written as integers when the denominator is one and as
//! `"p/q"` strings otherwise. Parsing accepts JSON integers, integer strings
//! and `"p/q"` strings with `q != 0`; values are reduced on load.

use num::{BigInt, One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix};

pub fn parse_rational_str(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    let q: BigInt = q.parse().map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

pub fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                Err(Error::Parse(format!("non-integer number {n}; write fractions as \"p/q\" strings")))
            }
        }
        Value::String(s) => parse_rational_str(s),
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

pub fn rational_to_value(x: &Rational) -> Value {
    if x.denom().is_one() {
        if let Ok(i) = i64::try_from(x.numer()) {
            return json!(i);
        }
    }
    Value::String(x.to_string())
}

pub fn rational_vec_from_value(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array of rationals, got {v}")))?
        .iter()
        .map(rational_from_value)
        .collect()
}

pub fn rational_vec_to_value(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_value).collect())
}

/// `{"rows": d, "cols": n, "entries": [[...], ...]}`.
pub fn matrix_from_value(v: &Value) -> Result<RationalMatrix> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("matrix must be a JSON object".into()))?;
    let field = |name: &str| obj.get(name).ok_or_else(|| Error::Parse(format!("matrix is missing \"{name}\"")));
    let rows = field("rows")?.as_u64().ok_or_else(|| Error::Parse("\"rows\" must be a count".into()))? as usize;
    let cols = field("cols")?.as_u64().ok_or_else(|| Error::Parse("\"cols\" must be a count".into()))? as usize;
    let entries = field("entries")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"entries\" must be an array of rows".into()))?;
    if entries.len() != rows {
        return Err(Error::Parse(format!("\"rows\" is {rows} but {} rows were given", entries.len())));
    }
    let mut flat = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        let row = rational_vec_from_value(row)?;
        if row.len() != cols {
            return Err(Error::Parse(format!("row {} has {} entries, expected {cols}", i + 1, row.len())));
        }
        flat.extend(row);
    }
    RationalMatrix::new(rows, cols, flat)
}

pub fn matrix_to_value(m: &RationalMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": (0..m.rows()).map(|i| rational_vec_to_value(m.row(i))).collect::<Vec<_>>(),
    })
}

pub fn parse_matrix(text: &str) -> Result<RationalMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
    matrix_from_value(&v)
}

/// Serde adapter writing a rational as a `"p/q"` string (integers as `"p"`).
pub mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};
    use serde_json::Value;

    use crate::linalg::Rational;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = Value::deserialize(d)?;
        super::rational_from_value(&v).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of rationals written as strings.
pub mod rational_vec_str {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};
    use serde_json::Value;

    use crate::linalg::Rational;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Value::deserialize(d)?;
        super::rational_vec_from_value(&v).map_err(serde::de::Error::custom)
    }
}
