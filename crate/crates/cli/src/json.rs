//! Flag parsing and JSON rendering of exact values.

use qwhit_core::rational::{format_rational, parse_rational};
use qwhit_core::{LaurentScalar, QMatrix, Rational};
use serde_json::{json, Value};

use crate::report::UsageError;

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn scalar(s: &LaurentScalar) -> Value {
    Value::String(s.to_string())
}

/// Row-major rational strings.
pub fn matrix(m: &QMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| rationals(r)).collect())
}

pub fn int_matrix(m: &[Vec<i64>]) -> Value {
    json!(m)
}

fn value_rational(v: &Value) -> Option<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rational::from_integer(x.into()))
            .or_else(|| parse_rational(&n.to_string())),
        _ => None,
    }
}

/// Comma-separated rationals, e.g. `1,-2/3`.
pub fn parse_list(flag: &str, s: &str) -> Result<Vec<Rational>, UsageError> {
    s.split(',')
        .map(|t| parse_rational(t).ok_or_else(|| UsageError(format!("--{}: cannot parse {:?} as a rational", flag, t))))
        .collect()
}

/// A JSON list of rationals (numbers or strings), or a bare comma list.
pub fn parse_vector(flag: &str, s: &str) -> Result<Vec<Rational>, UsageError> {
    match serde_json::from_str::<Value>(s) {
        Ok(Value::Array(items)) => items
            .iter()
            .map(|v| value_rational(v).ok_or_else(|| UsageError(format!("--{}: bad entry {}", flag, v))))
            .collect(),
        _ => parse_list(flag, s.trim_matches(|c| c == '[' || c == ']')),
    }
}

/// A square JSON matrix `[[..],[..]]` of rationals.
pub fn parse_matrix(flag: &str, s: &str) -> Result<QMatrix, UsageError> {
    let bad = |m: &str| UsageError(format!("--{}: {}", flag, m));
    let v: Value = serde_json::from_str(s).map_err(|e| bad(&format!("invalid JSON ({})", e)))?;
    let rows = v.as_array().ok_or_else(|| bad("expected an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let r = r.as_array().ok_or_else(|| bad("expected an array of rows"))?;
        out.push(
            r.iter()
                .map(|x| value_rational(x).ok_or_else(|| bad(&format!("bad entry {}", x))))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if out.is_empty() || out.iter().any(|r| r.len() != out.len()) {
        return Err(bad("matrix must be square and nonempty"));
    }
    Ok(QMatrix::from_rows(out))
}

/// 1-based comma permutation such as `2,1,3`.
pub fn parse_pi(s: &str, rank: usize) -> Result<Vec<usize>, UsageError> {
    let pi: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().ok().filter(|&x| x >= 1).map(|x| x - 1))
        .collect::<Option<_>>()
        .ok_or_else(|| UsageError(format!("--pi: expected 1-based indices, got {:?}", s)))?;
    let mut sorted = pi.clone();
    sorted.sort_unstable();
    if sorted != (0..rank).collect::<Vec<_>>() {
        return Err(UsageError(format!("--pi: {:?} is not a permutation of 1..{}", s, rank)));
    }
    Ok(pi)
}
