//! Hypothesis reports shared by the theorem checks and the Chern-class
//! checks, plus JSON helpers for exact numbers.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

use crate::algebra::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// Outcome of evaluating a statement's hypotheses and checkable
/// consequences on concrete input. Geometric conclusions are never claimed
/// as verified.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisReport {
    pub tag: String,
    pub inputs: Map<String, Value>,
    pub quantities: Map<String, Value>,
    pub verdict: Verdict,
    /// `Some(true)` when the computation forces hyperosculating points,
    /// `Some(false)` when it rules out that obstruction, `None` when the
    /// check says nothing about them.
    pub forces_hyperosculation: Option<bool>,
    pub summary: String,
    pub trace: Vec<String>,
}

impl HypothesisReport {
    pub fn new(tag: &str) -> Self {
        HypothesisReport {
            tag: tag.to_string(),
            inputs: Map::new(),
            quantities: Map::new(),
            verdict: Verdict::NotApplicable,
            forces_hyperosculation: None,
            summary: String::new(),
            trace: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.quantities.insert(key.to_string(), value.into());
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.trace.push(line.into());
    }

    pub fn quantity(&self, key: &str) -> Option<&Value> {
        self.quantities.get(key)
    }
}

/// Integers as JSON numbers when they fit in `i64`, else as strings.
pub fn big_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(k) => Value::from(k),
        None => Value::from(v.to_string()),
    }
}

/// Integral rationals as numbers, others as `"a/b"` strings.
pub fn rat_json(v: &Rat) -> Value {
    if v.is_integer() {
        big_json(v.numer())
    } else {
        Value::from(v.to_string())
    }
}

pub fn rat_vec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn ser_rat<S: Serializer>(v: &Rat, s: S) -> Result<S::Ok, S::Error> {
    rat_json(v).serialize(s)
}

pub fn ser_rat_vec<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    rat_vec_json(v).serialize(s)
}
