use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, rational_to_pq, LambdaPoly, Rational, XPoly};

/// An exact value recorded in a verdict.
///
/// JSON form: a rational is a `"p/q"` string, a λ-polynomial an array of such
/// strings (ascending powers), an x-polynomial an array of λ-polynomial
/// arrays. Arrays are never empty, so zero is `["0/1"]` or `[["0/1"]]` and
/// the three shapes stay distinguishable.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Rational(Rational),
    Lambda(LambdaPoly),
    X(XPoly),
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Rational(r)
    }
}

impl From<LambdaPoly> for Value {
    fn from(p: LambdaPoly) -> Self {
        Value::Lambda(p)
    }
}

impl From<XPoly> for Value {
    fn from(p: XPoly) -> Self {
        Value::X(p)
    }
}

pub(crate) fn lambda_to_json(p: &LambdaPoly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0/1".to_string()];
    }
    p.coeffs().iter().map(rational_to_pq).collect()
}

pub(crate) fn xpoly_to_json(p: &XPoly) -> Vec<Vec<String>> {
    if p.is_zero() {
        return vec![lambda_to_json(&LambdaPoly::zero())];
    }
    p.coeffs().iter().map(lambda_to_json).collect()
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Rational(r) => s.serialize_str(&rational_to_pq(r)),
            Value::Lambda(p) => lambda_to_json(p).serialize(s),
            Value::X(p) => {
                let rows = xpoly_to_json(p);
                let mut seq = s.serialize_seq(Some(rows.len()))?;
                for row in &rows {
                    seq.serialize_element(row)?;
                }
                seq.end()
            }
        }
    }
}

impl Value {
    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        fn rational(v: &serde_json::Value) -> Result<Rational, String> {
            v.as_str()
                .and_then(parse_rational)
                .ok_or_else(|| format!("expected a \"p/q\" string, got {v}"))
        }
        fn lambda(items: &[serde_json::Value]) -> Result<LambdaPoly, String> {
            Ok(LambdaPoly::new(items.iter().map(rational).collect::<Result<_, _>>()?))
        }
        match v {
            serde_json::Value::String(_) => rational(v).map(Value::Rational),
            serde_json::Value::Array(items) if items.is_empty() => Err("empty coefficient array".into()),
            serde_json::Value::Array(items) if items[0].is_array() => {
                let rows = items
                    .iter()
                    .map(|row| match row.as_array() {
                        Some(r) => lambda(r),
                        None => Err(format!("expected a coefficient array, got {row}")),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Value::X(XPoly::new(rows)))
            }
            serde_json::Value::Array(items) => lambda(items).map(Value::Lambda),
            other => Err(format!("not an exact value: {other}")),
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        Value::from_json(&raw).map_err(de::Error::custom)
    }
}

/// A named parameter or coordinate: an integer, an exact rational, or a tag.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Int(i64),
    Rational(Rational),
    Text(String),
}

impl From<i64> for Param {
    fn from(v: i64) -> Self {
        Param::Int(v)
    }
}

impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::Int(v as i64)
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_string())
    }
}

impl From<Rational> for Param {
    fn from(v: Rational) -> Self {
        Param::Rational(v)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::Rational(r) => f.write_str(&rational_to_pq(r)),
            Param::Text(t) => f.write_str(t),
        }
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Param::Int(v) => s.serialize_i64(*v),
            Param::Rational(r) => s.serialize_str(&rational_to_pq(r)),
            Param::Text(t) => s.serialize_str(t),
        }
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        match raw {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Param::Int)
                .ok_or_else(|| de::Error::custom("parameter is not an integer")),
            serde_json::Value::String(s) => Ok(match s.contains('/').then(|| parse_rational(&s)).flatten() {
                Some(r) => Param::Rational(r),
                None => Param::Text(s),
            }),
            other => Err(de::Error::custom(format!("unsupported parameter {other}"))),
        }
    }
}

pub type Params = BTreeMap<String, Param>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Where two sides first disagreed, with both exact values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub location: Params,
    pub lhs: Value,
    pub rhs: Value,
}

/// Outcome of one identity check.
///
/// A failing verdict always carries the counterexample that stopped it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub status: Status,
    pub checked_range: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub description: String,
    pub params: Params,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Serializes verdicts as a pretty-printed JSON array.
pub fn verdicts_to_json(verdicts: &[Verdict]) -> String {
    serde_json::to_string_pretty(verdicts).expect("verdicts always serialize")
}

pub fn verdicts_from_json(text: &str) -> Result<Vec<Verdict>, serde_json::Error> {
    serde_json::from_str(text)
}
