//! Per-property tallies for randomized sweeps.

use serde::Serialize;

use crate::numeric::Tolerance;

/// Running worst-case summary of one property over many trials.
///
/// Merging is order-independent except for ties on the worst ratio, which
/// resolve to the lowest trial index, so parallel and sequential sweeps
/// agree exactly.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tally {
    pub checked: usize,
    pub violations: usize,
    pub max_residual: f64,
    pub worst_ratio: f64,
    pub worst_trial: Option<usize>,
}

impl Tally {
    /// Records `residual` against the band `tol.bound(scale)`. Non-finite
    /// residuals always count as violations.
    pub fn record(&mut self, trial: usize, residual: f64, scale: f64, tol: Tolerance) {
        self.checked += 1;
        let ratio = if residual.is_finite() && scale.is_finite() {
            tol.ratio(residual.max(0.0), scale)
        } else {
            f64::INFINITY
        };
        if ratio > 1.0 {
            self.violations += 1;
        }
        if residual.is_finite() {
            self.max_residual = self.max_residual.max(residual);
        }
        self.bump_worst(trial, ratio);
    }

    /// Records a pass/fail observation that has no natural residual.
    pub fn record_flag(&mut self, trial: usize, ok: bool) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            self.bump_worst(trial, f64::INFINITY);
        }
    }

    fn bump_worst(&mut self, trial: usize, ratio: f64) {
        let better = match self.worst_trial {
            None => true,
            Some(t) => ratio > self.worst_ratio || (ratio == self.worst_ratio && trial < t),
        };
        if better {
            self.worst_ratio = ratio;
            self.worst_trial = Some(trial);
        }
    }

    pub fn merge(&mut self, other: &Tally) {
        self.checked += other.checked;
        self.violations += other.violations;
        self.max_residual = self.max_residual.max(other.max_residual);
        if let Some(t) = other.worst_trial {
            self.bump_worst(t, other.worst_ratio);
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Serializable summary of one property.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyOutcome {
    pub id: String,
    pub trials: usize,
    pub checked: usize,
    pub violations: usize,
    pub max_residual: f64,
    /// Worst residual as a fraction of its tolerance band; `<= 1` passes.
    pub worst_ratio: f64,
    pub worst_trial: Option<usize>,
    pub passed: bool,
}

impl PropertyOutcome {
    pub fn from_tally(id: impl Into<String>, trials: usize, tally: &Tally) -> Self {
        Self {
            id: id.into(),
            trials,
            checked: tally.checked,
            violations: tally.violations,
            max_residual: tally.max_residual,
            worst_ratio: tally.worst_ratio,
            worst_trial: tally.worst_trial,
            passed: tally.passed(),
        }
    }
}
