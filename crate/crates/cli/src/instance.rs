//! Instance files for `bounds`.
//!
//! ```json
//! {"field": "complex", "weights": [1, 1, 1],
//!  "x": [1, [0, 0.5], 0], "y": [1, 0, 0], "z": [0, 0, 1],
//!  "a": [0, 0], "A": 2}
//! ```
//!
//! Entries are numbers or `[re, im]` pairs; `weights` defaults to all ones.
//! Exactly one of the endpoint pairs `(a, A)` or `(m, M)` must be present.

use std::path::Path;

use serde_json::{Map, Value};
use two_inner_core::reverse::{PositivePair, ScalarPair};
use two_inner_core::{FieldTag, InnerSpace, Scalar, TwoInnerEvaluator, Vector};

use crate::error::CliError;

const KEYS: [&str; 10] = ["field", "weights", "x", "y", "z", "a", "A", "m", "M", "comment"];

#[derive(Debug, Clone, PartialEq)]
pub enum Endpoints {
    Scalar(ScalarPair),
    Positive(PositivePair),
}

impl Endpoints {
    pub fn scalar_pair(&self) -> ScalarPair {
        match self {
            Endpoints::Scalar(p) => *p,
            Endpoints::Positive(p) => p.as_scalar_pair(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub evaluator: TwoInnerEvaluator,
    pub x: Vector,
    pub y: Vector,
    pub z: Vector,
    pub endpoints: Endpoints,
}

pub fn load(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse(&text).map_err(|m| CliError::parse(path, m))
}

pub fn parse(text: &str) -> Result<Instance, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| format!("not valid JSON: {e}"))?;
    let obj = value.as_object().ok_or("instance must be a JSON object")?;
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(format!("unknown field `{k}`"));
    }
    let field = match obj.get("field").and_then(Value::as_str) {
        Some("real") => FieldTag::Real,
        Some("complex") => FieldTag::Complex,
        _ => return Err("field `field` must be \"real\" or \"complex\"".into()),
    };
    let x = vector(obj, "x")?;
    let y = vector(obj, "y")?;
    let z = vector(obj, "z")?;
    let weights = match obj.get("weights") {
        None | Some(Value::Null) => vec![1.0; x.dim()],
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, w)| w.as_f64().ok_or(format!("field `weights`: entry {i} must be a number")))
            .collect::<Result<_, _>>()?,
        Some(_) => return Err("field `weights` must be an array of numbers".into()),
    };
    let space = InnerSpace::new(field, weights).map_err(|e| format!("field `weights`: {e}"))?;
    for (name, v) in [("x", &x), ("y", &y), ("z", &z)] {
        if v.dim() != space.dim() {
            return Err(format!("field `{name}` has {} entries, expected {}", v.dim(), space.dim()));
        }
        if field == FieldTag::Real && !v.is_real() {
            return Err(format!("field `{name}` has complex entries in a real instance"));
        }
    }
    let endpoints = endpoints(obj, field)?;
    Ok(Instance {
        evaluator: TwoInnerEvaluator::new(space),
        x,
        y,
        z,
        endpoints,
    })
}

fn entry(v: &Value) -> Option<Scalar> {
    match v {
        Value::Number(n) => Some(Scalar::new(n.as_f64()?, 0.0)),
        Value::Array(p) if p.len() == 2 => Some(Scalar::new(p[0].as_f64()?, p[1].as_f64()?)),
        _ => None,
    }
}

fn vector(obj: &Map<String, Value>, name: &str) -> Result<Vector, String> {
    let items = obj
        .get(name)
        .and_then(Value::as_array)
        .ok_or(format!("field `{name}` is missing or not an array"))?;
    let entries = items
        .iter()
        .enumerate()
        .map(|(i, v)| entry(v).ok_or(format!("field `{name}`: entry {i} must be a number or [re, im]")))
        .collect::<Result<Vec<_>, _>>()?;
    Vector::new(entries).map_err(|e| format!("field `{name}`: {e}"))
}

fn endpoints(obj: &Map<String, Value>, field: FieldTag) -> Result<Endpoints, String> {
    let get = |k: &str| obj.get(k).filter(|v| !v.is_null());
    let scalar = |k: &str| -> Result<Option<Scalar>, String> {
        get(k)
            .map(|v| entry(v).ok_or(format!("field `{k}` must be a number or [re, im]")))
            .transpose()
    };
    let real = |k: &str| -> Result<Option<f64>, String> {
        get(k)
            .map(|v| v.as_f64().ok_or(format!("field `{k}` must be a number")))
            .transpose()
    };
    match (scalar("a")?, scalar("A")?, real("m")?, real("M")?) {
        (Some(a), Some(big_a), None, None) => {
            ScalarPair::new(a, big_a, field).map(Endpoints::Scalar).map_err(|e| format!("fields `a`, `A`: {e}"))
        }
        (None, None, Some(m), Some(big_m)) => {
            PositivePair::new(m, big_m).map(Endpoints::Positive).map_err(|e| format!("fields `m`, `M`: {e}"))
        }
        _ => Err("give exactly one endpoint pair: both `a` and `A`, or both `m` and `M`".into()),
    }
}
