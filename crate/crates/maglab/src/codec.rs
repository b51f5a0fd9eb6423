//! JSON encoding of scalars, spaces, generalized polynomials and reports.
//!
//! Objects are written with sorted keys and scalars in canonical form, so
//! equal values always serialize to identical bytes.

use maglab_core::exact::rational::{format_rational, parse_rational};
use maglab_core::exact::{CyclotomicReal, FormalScalar, Interval, Rational, Scalar, Witness};
use maglab_core::genpoly::{GenPolynomial, GenRational};
use maglab_core::metric::{CircularType, FiniteMetricSpace};
use maglab_core::report::VerdictReport;
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| bad(format!("not a rational: {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| bad(format!("not an integer: {n}"))),
        other => Err(bad(format!("expected a rational, found {other}"))),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    match x {
        Scalar::Rational(r) => rational_to_json(r),
        _ => serde_json::from_str(&x.canonical_text()).expect("canonical text is valid JSON"),
    }
}

/// Accepts `"p/q"`, integers, `{"c": [...], "m": m}` and
/// `{"const": "p/q", "syms": {...}}`.
pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(_) | Value::Number(_) => Ok(Scalar::from(rational_from_json(v)?)),
        Value::Object(o) if o.contains_key("m") => {
            let m = o["m"].as_u64().ok_or_else(|| bad("conductor must be a positive integer"))?;
            let c = o.get("c").and_then(Value::as_array).ok_or_else(|| bad("missing coefficient list `c`"))?;
            let coeffs = c.iter().map(rational_from_json).collect::<Result<Vec<_>>>()?;
            Ok(Scalar::from(CyclotomicReal::new(m, coeffs)?))
        }
        Value::Object(o) if o.contains_key("syms") || o.contains_key("const") => {
            let c = match o.get("const") {
                Some(c) => rational_from_json(c)?,
                None => Rational::from_integer(0.into()),
            };
            let mut syms = Vec::new();
            if let Some(s) = o.get("syms") {
                let s = s.as_object().ok_or_else(|| bad("`syms` must be an object"))?;
                for (k, x) in s {
                    syms.push((k.clone(), rational_from_json(x)?));
                }
            }
            Ok(Scalar::from(FormalScalar::new(c, syms)?))
        }
        other => Err(bad(format!("not a scalar: {other}"))),
    }
}

/// Scalar from command-line text: `p/q`, an integer, or a JSON scalar.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    if t.starts_with('{') || t.starts_with('"') {
        scalar_from_json(&serde_json::from_str(t)?)
    } else {
        scalar_from_json(&Value::String(t.to_string()))
    }
}

pub fn witness_to_json(w: &Witness) -> Value {
    Value::Object(w.iter().map(|(k, v)| (k.clone(), rational_to_json(v))).collect())
}

pub fn witness_from_json(v: &Value) -> Result<Witness> {
    let o = v.as_object().ok_or_else(|| bad("witness must be an object"))?;
    let vals = o.iter().map(|(k, x)| Ok((k.clone(), rational_from_json(x)?))).collect::<Result<Vec<_>>>()?;
    Ok(Witness::new(vals)?)
}

/// `{"dist": [[...]], "label": ..., "n": n, "witness": {...}}`.
pub fn space_to_json(x: &FiniteMetricSpace) -> Value {
    let mut o = Map::new();
    o.insert("n".into(), json!(x.n()));
    let rows: Vec<Value> = x.rows().iter().map(|r| Value::Array(r.iter().map(scalar_to_json).collect())).collect();
    o.insert("dist".into(), Value::Array(rows));
    if let Some(l) = x.label() {
        o.insert("label".into(), json!(l));
    }
    if let Some(w) = x.witness() {
        o.insert("witness".into(), witness_to_json(w));
    }
    Value::Object(o)
}

/// Reads a full matrix under `dist` or the strict upper triangle under
/// `upper` (row `i` lists `d(i, j)` for `j > i`), then validates the metric.
pub fn space_from_json(v: &Value) -> Result<FiniteMetricSpace> {
    let o = v.as_object().ok_or_else(|| bad("space must be a JSON object"))?;
    let rows = |key: &str| -> Result<Option<Vec<Vec<Scalar>>>> {
        let Some(a) = o.get(key) else { return Ok(None) };
        let a = a.as_array().ok_or_else(|| bad(format!("`{key}` must be an array")))?;
        a.iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| bad(format!("`{key}` rows must be arrays")))?
                    .iter()
                    .map(scalar_from_json)
                    .collect()
            })
            .collect::<Result<Vec<Vec<Scalar>>>>()
            .map(Some)
    };
    let mut x = if let Some(d) = rows("dist")? {
        FiniteMetricSpace::new(d)?
    } else if let Some(u) = rows("upper")? {
        let n = o.get("n").and_then(Value::as_u64).map(|n| n as usize).unwrap_or(u.len() + 1);
        if u.len() + 1 < n || u.iter().enumerate().any(|(i, r)| r.len() != n - 1 - i) {
            return Err(bad(format!("`upper` does not describe {n} points")));
        }
        FiniteMetricSpace::from_fn(n, |i, j| Ok(u[i][j - i - 1].clone()))?
    } else {
        return Err(bad("space needs `dist` or `upper`"));
    };
    if let Some(n) = o.get("n").and_then(Value::as_u64) {
        if n as usize != x.n() {
            return Err(bad(format!("`n` is {n} but the matrix has {} rows", x.n())));
        }
    }
    if let Some(l) = o.get("label").and_then(Value::as_str) {
        x = x.with_label(l);
    }
    if let Some(w) = o.get("witness") {
        x = x.with_witness(witness_from_json(w)?);
    }
    Ok(x.validated()?)
}

pub fn type_from_json(v: &Value) -> Result<CircularType> {
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("type needs `n`"))? as usize;
    let d = v.get("d").and_then(Value::as_array).ok_or_else(|| bad("type needs `d`"))?;
    let d = d.iter().map(scalar_from_json).collect::<Result<Vec<_>>>()?;
    if d.len() != n / 2 {
        return Err(bad(format!("type for n = {n} needs {} values, found {}", n / 2, d.len())));
    }
    Ok(CircularType { n, d })
}

pub fn type_to_json(t: &CircularType) -> Value {
    json!({"n": t.n, "d": t.d.iter().map(scalar_to_json).collect::<Vec<_>>()})
}

/// Terms in increasing exponent order, with the readable form alongside.
pub fn poly_to_json(p: &GenPolynomial, w: Option<&Witness>) -> Result<Value> {
    let terms: Vec<Value> = p
        .sorted_terms(w)?
        .iter()
        .map(|(e, c)| json!({"c": rational_to_json(c), "e": scalar_to_json(e.value())}))
        .collect();
    Ok(json!({"terms": terms, "text": p.to_text(w)?}))
}

pub fn poly_from_json(v: &Value) -> Result<GenPolynomial> {
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("polynomial needs `terms`"))?;
    let mut p = GenPolynomial::zero();
    for t in terms {
        let e = scalar_from_json(t.get("e").ok_or_else(|| bad("term needs `e`"))?)?;
        let c = rational_from_json(t.get("c").ok_or_else(|| bad("term needs `c`"))?)?;
        p = p.add(&GenPolynomial::monomial(e, c)?);
    }
    Ok(p)
}

pub fn genrational_to_json(r: &GenRational, w: Option<&Witness>) -> Result<Value> {
    Ok(json!({"num": poly_to_json(r.num(), w)?, "den": poly_to_json(r.den(), w)?}))
}

/// `{"hi": ..., "lo": ...}` as decimal strings rounded outward.
pub fn interval_to_json(iv: &Interval, digits: u32) -> Value {
    let (lo, hi) = iv.to_decimal(digits);
    json!({"lo": lo, "hi": hi})
}

pub fn report_to_json(r: &VerdictReport, timing: bool) -> Value {
    let checks: Vec<Value> =
        r.checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "witness": c.witness})).collect();
    let mut o = json!({
        "subjects": r.subjects,
        "checks": checks,
        "pass": r.all_pass(),
    });
    if timing {
        o["elapsed_ms"] = json!(r.elapsed_ms);
    }
    o
}

/// Compact JSON with sorted keys, followed by a newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values always serialize");
    s.push('\n');
    s
}
