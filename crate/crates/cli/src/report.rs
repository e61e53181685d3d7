//! JSON number formatting and fixed-width tables.

use serde_json::{Map, Number, Value};
use two_inner_core::outcome::PropertyOutcome;
use two_inner_core::reverse::BoundReport;
use two_inner_core::{Scalar, Tolerance, Vector};

/// `x` with 17 significant digits, or `null` when not finite.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    let n: Number = serde_json::from_str(&text).expect("formatted float is a JSON number");
    Value::Number(n)
}

pub fn scalar(s: Scalar) -> Value {
    Value::Array(vec![num(s.re), num(s.im)])
}

pub fn vector(v: &Vector) -> Value {
    Value::Array(v.entries().iter().map(|s| scalar(*s)).collect())
}

pub fn tolerance(tol: Tolerance) -> Value {
    let mut m = Map::new();
    m.insert("abs".into(), num(tol.abs));
    m.insert("rel".into(), num(tol.rel));
    Value::Object(m)
}

pub fn object<const N: usize>(entries: [(&str, Value); N]) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

pub fn sweep_property(o: &PropertyOutcome) -> Value {
    object([
        ("id", o.id.clone().into()),
        ("trials", o.trials.into()),
        ("checked", o.checked.into()),
        ("violations", o.violations.into()),
        ("residual", num(o.max_residual)),
        ("worst_ratio", num(o.worst_ratio)),
        ("worst_trial", o.worst_trial.map_or(Value::Null, Value::from)),
        ("passed", o.passed.into()),
    ])
}

/// A bound as a report property; `passed` is false only for a genuine
/// violation (hypothesis holds, bound fails).
pub fn bound_property(b: &BoundReport, tol: Tolerance) -> Value {
    object([
        ("id", b.inequality_id.label().into()),
        ("lhs", num(b.lhs)),
        ("rhs", num(b.rhs)),
        ("slack", num(b.slack)),
        ("hypothesis_ok", b.hypothesis_ok.into()),
        ("residual", num((-b.slack).max(0.0))),
        ("chain_slack", num(b.chain_slack())),
        ("constant_used", num(b.constant_used)),
        ("coefficient", num(b.coefficient)),
        ("tight", (b.hypothesis_ok && b.tight(tol)).into()),
        ("passed", (!b.violated(tol)).into()),
    ])
}

/// A residual check as a report property.
pub fn residual_property(id: &str, residual: f64, scale: f64, tol: Tolerance) -> Value {
    object([
        ("id", id.into()),
        ("residual", num(residual)),
        ("scale", num(scale)),
        ("passed", tol.allows(residual, scale).into()),
    ])
}

pub fn cell(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6e}")
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// First column left-aligned, the rest right-aligned.
    pub fn render(&self) -> String {
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|c| {
                self.rows
                    .iter()
                    .map(|r| r[c].len())
                    .chain([self.headers[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (s, w))| if c == 0 { format!("{s:<w$}") } else { format!("{s:>w$}") })
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut out = line(&self.headers);
        out.push('\n');
        out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

pub fn status(passed: bool) -> String {
    if passed { "ok" } else { "FAIL" }.to_string()
}

pub fn bound_row(b: &BoundReport, tol: Tolerance) -> Vec<String> {
    let state = if b.violated(tol) {
        "FAIL"
    } else if !b.hypothesis_ok {
        "n/a"
    } else if b.tight(tol) {
        "tight"
    } else {
        "ok"
    };
    vec![
        b.inequality_id.label().to_string(),
        cell(b.lhs),
        cell(b.rhs),
        cell(b.slack),
        if b.hypothesis_ok { "yes" } else { "no" }.to_string(),
        state.to_string(),
    ]
}

pub const BOUND_HEADERS: [&str; 6] = ["id", "lhs", "rhs", "slack", "hypothesis", "status"];
