//! The weighted 2-inner product on a quadrature grid and the determinantal
//! integral inequalities.
//!
//! A grid with nodes `s_i` and positive weights `w_i`, together with weight
//! samples `phi_i >= 0`, is a discrete measure `mu_i = w_i phi_i`. On it
//!
//! ```text
//! (f, g | h) = 1/2 sum_i sum_j mu_i mu_j det[f_i f_j; h_i h_j] det[g_i g_j; h_i h_j]
//!            = <f, g><h, h> - <f, h><g, h>,       <f, g> = sum_i mu_i f_i g_i
//! ```
//!
//! exactly (not just up to quadrature error), so the reverse bounds of
//! [`crate::reverse`] apply verbatim. Quadrature accuracy only matters when
//! comparing against continuum closed forms.
//!
//! Summation order: single integrals use pairwise summation over nodes.
//! The double sum accumulates each row `i` over `j > i` left to right and
//! then pairwise-sums the row totals, so parallel and sequential runs agree
//! bit for bit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{pairwise_sum, FieldTag, Scalar, Tolerance, Vector};
use crate::par::{map_indexed, Execution};
use crate::reverse::{BoundReport, InequalityId, PositivePair};
use crate::space::TwoInner;

/// Default cap on the node count for the pairwise synchronicity scan.
pub const DEFAULT_SYNC_NODE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureGrid {
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(Error::InvalidDimension(format!(
                "{} nodes but {} weights",
                nodes.len(),
                weights.len()
            )));
        }
        if nodes.len() < 2 {
            return Err(Error::InvalidDimension(format!("a grid needs at least 2 nodes, got {}", nodes.len())));
        }
        if nodes.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidInput("non-finite grid node".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidInput(format!("quadrature weights must be positive, got {w}")));
        }
        Ok(Self { nodes, weights })
    }

    /// Composite Simpson rule on `n` equispaced nodes (`n` odd, `n >= 3`).
    pub fn simpson(a: f64, b: f64, n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidDimension(format!("Simpson needs an odd node count >= 3, got {n}")));
        }
        check_interval(a, b)?;
        let h = (b - a) / (n - 1) as f64;
        let nodes = (0..n).map(|i| a + h * i as f64).collect();
        let weights = (0..n)
            .map(|i| {
                let c = if i == 0 || i == n - 1 {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                c * h / 3.0
            })
            .collect();
        Self::new(nodes, weights)
    }

    /// Composite trapezoid rule on `n >= 2` equispaced nodes.
    pub fn trapezoid(a: f64, b: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(format!("trapezoid needs >= 2 nodes, got {n}")));
        }
        check_interval(a, b)?;
        let h = (b - a) / (n - 1) as f64;
        let nodes = (0..n).map(|i| a + h * i as f64).collect();
        let weights = (0..n).map(|i| if i == 0 || i == n - 1 { 0.5 * h } else { h }).collect();
        Self::new(nodes, weights)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Samples `f` at every node.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes.iter().map(|&s| f(s)).collect()
    }

    fn check_len(&self, values: &[f64], what: &str) -> Result<()> {
        if values.len() != self.len() {
            return Err(Error::InvalidDimension(format!(
                "{what} has {} samples, grid has {} nodes",
                values.len(),
                self.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("{what} has non-finite samples")));
        }
        Ok(())
    }

    /// `mu_i = w_i phi_i`.
    pub fn measure(&self, phi: &[f64]) -> Result<Vec<f64>> {
        self.check_len(phi, "phi")?;
        if let Some(p) = phi.iter().find(|p| **p < 0.0) {
            return Err(Error::InvalidInput(format!("phi must be nonnegative, got {p}")));
        }
        Ok(self.weights.iter().zip(phi).map(|(w, p)| w * p).collect())
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::InvalidInput(format!("invalid interval [{a}, {b}]")));
    }
    Ok(())
}

/// Samples of `f`, `g`, `h` and the weight function `phi` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTriple {
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub h: Vec<f64>,
    pub phi: Vec<f64>,
}

impl WeightedTriple {
    pub fn new(f: Vec<f64>, g: Vec<f64>, h: Vec<f64>, phi: Vec<f64>) -> Result<Self> {
        let n = phi.len();
        for (name, v) in [("f", &f), ("g", &g), ("h", &h), ("phi", &phi)] {
            if v.len() != n {
                return Err(Error::InvalidDimension(format!("{name} has {} samples, expected {n}", v.len())));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(format!("{name} has non-finite samples")));
            }
        }
        if let Some(p) = phi.iter().find(|p| **p < 0.0) {
            return Err(Error::InvalidInput(format!("phi must be nonnegative, got {p}")));
        }
        Ok(Self { f, g, h, phi })
    }

    pub fn sample(
        grid: &QuadratureGrid,
        f: impl Fn(f64) -> f64,
        g: impl Fn(f64) -> f64,
        h: impl Fn(f64) -> f64,
        phi: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        Self::new(grid.sample(f), grid.sample(g), grid.sample(h), grid.sample(phi))
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }
}

/// `sum_i w_i phi_i values_i`, pairwise-summed.
pub fn quad_integral(values: &[f64], grid: &QuadratureGrid, phi: &[f64]) -> Result<f64> {
    grid.check_len(values, "values")?;
    let mu = grid.measure(phi)?;
    Ok(weighted_sum(&mu, values, |v| v))
}

fn weighted_sum(mu: &[f64], values: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    let terms: Vec<f64> = mu.iter().zip(values).map(|(m, v)| m * f(*v)).collect();
    pairwise_sum(&terms)
}

fn weighted_dot(mu: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let terms: Vec<f64> = mu.iter().zip(a.iter().zip(b)).map(|(m, (x, y))| m * x * y).collect();
    pairwise_sum(&terms)
}

/// The six weighted moments entering every determinant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub ff: f64,
    pub gg: f64,
    pub hh: f64,
    pub fg: f64,
    pub fh: f64,
    pub gh: f64,
}

impl Moments {
    pub fn compute(triple: &WeightedTriple, grid: &QuadratureGrid) -> Result<Self> {
        grid.check_len(&triple.f, "f")?;
        let mu = grid.measure(&triple.phi)?;
        let (f, g, h) = (&triple.f, &triple.g, &triple.h);
        Ok(Self {
            ff: weighted_dot(&mu, f, f),
            gg: weighted_dot(&mu, g, g),
            hh: weighted_dot(&mu, h, h),
            fg: weighted_dot(&mu, f, g),
            fh: weighted_dot(&mu, f, h),
            gh: weighted_dot(&mu, g, h),
        })
    }

    /// `(f, g | h)` in determinant form.
    pub fn two_inner(&self) -> f64 {
        self.fg * self.hh - self.fh * self.gh
    }

    /// `|f|h|^2`
    pub fn f_norm_sq(&self) -> f64 {
        self.ff * self.hh - self.fh * self.fh
    }

    /// `|g|h|^2`
    pub fn g_norm_sq(&self) -> f64 {
        self.gg * self.hh - self.gh * self.gh
    }

    /// `|f + g|h|^2`
    pub fn sum_norm_sq(&self) -> f64 {
        let s = self.fh + self.gh;
        (self.ff + 2.0 * self.fg + self.gg) * self.hh - s * s
    }

    /// `sqrt(ff gg) hh`: magnitude of every determinant term.
    pub fn scale(&self) -> f64 {
        (self.ff * self.gg).sqrt() * self.hh
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeterminantReport {
    pub entries: Moments,
    /// Double-integral form.
    pub two_inner_double: f64,
    /// Gram-determinant form.
    pub two_inner_det: f64,
    pub cross_residual: f64,
    pub scale: f64,
}

pub fn two_inner_phi(triple: &WeightedTriple, grid: &QuadratureGrid) -> Result<DeterminantReport> {
    two_inner_phi_with(triple, grid, Execution::default())
}

pub fn two_inner_phi_with(triple: &WeightedTriple, grid: &QuadratureGrid, exec: Execution) -> Result<DeterminantReport> {
    let entries = Moments::compute(triple, grid)?;
    let mu = grid.measure(&triple.phi)?;
    let double = double_sum(&mu, &triple.f, &triple.g, &triple.h, exec);
    let det = entries.two_inner();
    Ok(DeterminantReport {
        entries,
        two_inner_double: double,
        two_inner_det: det,
        cross_residual: (double - det).abs(),
        scale: entries.scale(),
    })
}

/// `sum_{i<j} mu_i mu_j (f_i h_j - f_j h_i)(g_i h_j - g_j h_i)`, which equals
/// half the full symmetric double sum.
fn double_sum(mu: &[f64], f: &[f64], g: &[f64], h: &[f64], exec: Execution) -> f64 {
    let n = mu.len();
    let rows = map_indexed(n, exec, |i| {
        let (fi, gi, hi, mi) = (f[i], g[i], h[i], mu[i]);
        if mi == 0.0 {
            return 0.0;
        }
        let mut acc = 0.0;
        for j in i + 1..n {
            let df = fi * h[j] - f[j] * hi;
            let dg = gi * h[j] - g[j] * hi;
            acc += mu[j] * df * dg;
        }
        mi * acc
    });
    pairwise_sum(&rows)
}

/// `|f|h|` from the determinant form, clamped at zero inside the rounding band.
pub fn two_norm_phi(f: &[f64], h: &[f64], phi: &[f64], grid: &QuadratureGrid) -> Result<f64> {
    grid.check_len(f, "f")?;
    grid.check_len(h, "h")?;
    let mu = grid.measure(phi)?;
    let ff = weighted_dot(&mu, f, f);
    let hh = weighted_dot(&mu, h, h);
    let fh = weighted_dot(&mu, f, h);
    clamp_sqrt(ff * hh - fh * fh, ff * hh, Tolerance::DEFAULT)
}

fn clamp_sqrt(radicand: f64, scale: f64, tol: Tolerance) -> Result<f64> {
    if radicand >= 0.0 {
        Ok(radicand.sqrt())
    } else if tol.allows(-radicand, scale) {
        Ok(0.0)
    } else {
        Err(Error::InternalConsistency(format!(
            "squared 2-norm {radicand:e} is negative beyond tolerance"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SyncReport {
    pub synchronous: bool,
    /// Most negative `(q_i - q_j)(p_i - p_j)` over weighted node pairs.
    pub worst_product: f64,
    /// Pair attaining `worst_product` (lowest index on ties).
    pub worst_pair: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyncOptions {
    pub tol: Tolerance,
    /// Refuse scans over more than this many weighted nodes; `None` lifts the cap.
    pub max_nodes: Option<usize>,
    pub exec: Execution,
}

impl Default for SyncOptions {
    fn default() -> Self {
        Self {
            tol: Tolerance::DEFAULT,
            max_nodes: Some(DEFAULT_SYNC_NODE_CAP),
            exec: Execution::default(),
        }
    }
}

/// Whether `(q_i - q_j)(p_i - p_j) >= -tol` for every pair of nodes carrying
/// positive measure. Nodes with `w_i phi_i = 0` are ignored.
pub fn synchronous(q: &[f64], p: &[f64], grid: &QuadratureGrid, phi: &[f64], opts: SyncOptions) -> Result<SyncReport> {
    grid.check_len(q, "q")?;
    grid.check_len(p, "p")?;
    let mu = grid.measure(phi)?;
    let support: Vec<usize> = (0..mu.len()).filter(|&i| mu[i] > 0.0).collect();
    if let Some(cap) = opts.max_nodes {
        if support.len() > cap {
            return Err(Error::InvalidInput(format!(
                "synchronicity scan over {} nodes exceeds the cap of {cap}",
                support.len()
            )));
        }
    }
    let range = |v: &[f64]| {
        let (lo, hi) = support
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| (lo.min(v[i]), hi.max(v[i])));
        if support.is_empty() { 0.0 } else { hi - lo }
    };
    let band = opts.tol.bound(range(q) * range(p));

    let rows = map_indexed(support.len(), opts.exec, |a| {
        let i = support[a];
        let mut worst = (f64::INFINITY, None);
        for &j in &support[a + 1..] {
            let prod = (q[i] - q[j]) * (p[i] - p[j]);
            if prod < worst.0 {
                worst = (prod, Some((i, j)));
            }
        }
        worst
    });
    let (worst_product, worst_pair) = rows
        .into_iter()
        .fold((f64::INFINITY, None), |best, row| if row.0 < best.0 { row } else { best });
    let worst_product = if worst_pair.is_some() { worst_product } else { 0.0 };
    Ok(SyncReport {
        synchronous: worst_product >= -band,
        worst_product,
        worst_pair: if worst_product < -band { worst_pair } else { None },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PremiseReport {
    /// Synchronicity of `(M g - f)/h` and `(f - m g)/h`.
    pub synchronicity: SyncReport,
    /// `(M g - f, f - m g | h)`, nonnegative whenever the pair is synchronous.
    pub sign_value: f64,
    pub sign_ok: bool,
    pub holds: bool,
}

pub fn premise_check(triple: &WeightedTriple, pair: PositivePair, grid: &QuadratureGrid, tol: Tolerance) -> Result<PremiseReport> {
    premise_check_with(triple, pair, grid, SyncOptions { tol, ..SyncOptions::default() })
}

pub fn premise_check_with(
    triple: &WeightedTriple,
    pair: PositivePair,
    grid: &QuadratureGrid,
    opts: SyncOptions,
) -> Result<PremiseReport> {
    grid.check_len(&triple.f, "f")?;
    let mu = grid.measure(&triple.phi)?;
    if let Some(i) = (0..mu.len()).find(|&i| mu[i] > 0.0 && triple.h[i] == 0.0) {
        return Err(Error::InvalidInstance(format!(
            "h vanishes at node {i} (s = {}) which carries positive weight",
            grid.nodes()[i]
        )));
    }
    let (m, big_m) = (pair.lo, pair.hi);
    let ratio = |num: &dyn Fn(usize) -> f64| -> Vec<f64> {
        (0..mu.len())
            .map(|i| if mu[i] > 0.0 { num(i) / triple.h[i] } else { 0.0 })
            .collect()
    };
    let q = ratio(&|i| big_m * triple.g[i] - triple.f[i]);
    let p = ratio(&|i| triple.f[i] - m * triple.g[i]);
    let synchronicity = synchronous(&q, &p, grid, &triple.phi, opts)?;

    let upper: Vec<f64> = triple.g.iter().zip(&triple.f).map(|(g, f)| big_m * g - f).collect();
    let lower: Vec<f64> = triple.f.iter().zip(&triple.g).map(|(f, g)| f - m * g).collect();
    let shifted = WeightedTriple::new(upper, lower, triple.h.clone(), triple.phi.clone())?;
    let sm = Moments::compute(&shifted, grid)?;
    let sign_value = sm.two_inner();
    let sign_ok = sign_value >= -opts.tol.bound(sm.scale());
    Ok(PremiseReport {
        synchronicity,
        sign_value,
        sign_ok,
        holds: synchronicity.synchronous,
    })
}

/// Determinantal bound for inequality `which` (one of the `Det*` ids).
///
/// The quotient and gap-ratio bounds use the constants inherited from the
/// positive-endpoint inner-product results, `(M + m)/sqrt(mM)` and
/// `(M - m)^2/(mM)`; the `*Printed` ids evaluate the alternative constants
/// `(M - m)/sqrt(mM)` and `(M - m)^2/sqrt(mM)` for comparison.
pub fn prop_bounds(
    triple: &WeightedTriple,
    pair: PositivePair,
    grid: &QuadratureGrid,
    which: InequalityId,
    tol: Tolerance,
) -> Result<BoundReport> {
    let premise = premise_check(triple, pair, grid, tol)?;
    let moments = Moments::compute(triple, grid)?;
    det_bound(&moments, &pair, which, premise.holds, tol)
}

fn det_bound(mo: &Moments, pair: &PositivePair, which: InequalityId, ok: bool, tol: Tolerance) -> Result<BoundReport> {
    let scale = mo.scale();
    let nf2 = clamp_sqrt(mo.f_norm_sq(), mo.ff * mo.hh, tol)?.powi(2);
    let ng2 = clamp_sqrt(mo.g_norm_sq(), mo.gg * mo.hh, tol)?.powi(2);
    let (nf, ng) = (nf2.sqrt(), ng2.sqrt());
    let fg = mo.two_inner();
    if ok && fg < -tol.bound(scale) {
        return Err(Error::InternalConsistency(format!(
            "(f,g|h) = {fg:e} is negative although the premise holds"
        )));
    }
    let (m, big_m) = (pair.lo, pair.hi);
    let root = (m * big_m).sqrt();
    let gap = nf2 * ng2 - fg * fg;
    let report = |lhs: f64, rhs: f64, constant: f64, coefficient: f64| {
        BoundReport::new(which, lhs, rhs, vec![0.0, lhs, rhs], constant, coefficient, ok)
    };
    Ok(match which {
        InequalityId::DetGap => {
            let c = 0.25 * (big_m - m).powi(2);
            report(gap, c * ng2 * ng2, 0.25, c)
        }
        InequalityId::DetQuotient => {
            let c = pair.ratio_coefficient();
            report(nf * ng, c * fg, 0.5, c)
        }
        InequalityId::DetQuotientPrinted => {
            let c = 0.5 * (big_m - m) / root;
            report(nf * ng, c * fg, 0.5, c)
        }
        InequalityId::DetDifference => {
            let c = pair.difference_coefficient();
            report(nf * ng - fg, c * fg, 0.5, c)
        }
        InequalityId::DetGapRatio => {
            let c = pair.gap_coefficient();
            report(gap, c * fg * fg, 0.25, c)
        }
        InequalityId::DetGapRatioPrinted => {
            let c = 0.25 * (big_m - m).powi(2) / root;
            report(gap, c * fg * fg, 0.25, c)
        }
        InequalityId::DetTriangle => {
            let c = pair.triangle_coefficient();
            let nsum = clamp_sqrt(mo.sum_norm_sq(), 4.0 * scale, tol)?;
            report(nf + ng - nsum, c * fg.max(0.0).sqrt(), 1.0, c)
        }
        other => {
            return Err(Error::InvalidInput(format!("{other} is not a determinantal inequality")));
        }
    })
}

/// Everything the integral pipeline reports for one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralReport {
    pub determinant: DeterminantReport,
    pub premise: PremiseReport,
    /// Bounds with the inherited constants.
    pub bounds: Vec<BoundReport>,
    /// The alternative-constant variants, for comparison only.
    pub printed: Vec<BoundReport>,
}

pub const DET_BOUNDS: [InequalityId; 5] = [
    InequalityId::DetGap,
    InequalityId::DetQuotient,
    InequalityId::DetDifference,
    InequalityId::DetGapRatio,
    InequalityId::DetTriangle,
];

pub const DET_PRINTED: [InequalityId; 2] = [InequalityId::DetQuotientPrinted, InequalityId::DetGapRatioPrinted];

pub fn integral_report(
    triple: &WeightedTriple,
    pair: PositivePair,
    grid: &QuadratureGrid,
    opts: SyncOptions,
) -> Result<IntegralReport> {
    let determinant = two_inner_phi_with(triple, grid, opts.exec)?;
    let premise = premise_check_with(triple, pair, grid, opts)?;
    let mo = determinant.entries;
    let bounds = DET_BOUNDS
        .iter()
        .map(|&id| det_bound(&mo, &pair, id, premise.holds, opts.tol))
        .collect::<Result<Vec<_>>>()?;
    let printed = DET_PRINTED
        .iter()
        .map(|&id| det_bound(&mo, &pair, id, premise.holds, opts.tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntegralReport {
        determinant,
        premise,
        bounds,
        printed,
    })
}

/// The grid's Gram-determinant 2-inner product on sample vectors, as a
/// real [`TwoInner`] of dimension `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridEvaluator {
    mu: Vec<f64>,
}

impl GridEvaluator {
    /// Needs at least two nodes with positive measure.
    pub fn new(grid: &QuadratureGrid, phi: &[f64]) -> Result<Self> {
        let mu = grid.measure(phi)?;
        if mu.iter().filter(|m| **m > 0.0).count() < 2 {
            return Err(Error::InvalidInstance("fewer than two nodes carry positive measure".into()));
        }
        Ok(Self { mu })
    }

    fn check(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.mu.len() {
            return Err(Error::dim_mismatch(self.mu.len(), v.dim()));
        }
        if !v.is_real() {
            return Err(Error::InvalidInput("grid functions are real-valued".into()));
        }
        Ok(())
    }

    fn dot(&self, a: &Vector, b: &Vector) -> f64 {
        let terms: Vec<f64> = self
            .mu
            .iter()
            .zip(a.entries().iter().zip(b.entries()))
            .map(|(m, (x, y))| m * x.re * y.re)
            .collect();
        pairwise_sum(&terms)
    }
}

impl TwoInner for GridEvaluator {
    fn dim(&self) -> usize {
        self.mu.len()
    }

    fn field(&self) -> FieldTag {
        FieldTag::Real
    }

    fn two_inner(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Scalar> {
        for v in [x, y, z] {
            self.check(v)?;
        }
        let value = self.dot(x, y) * self.dot(z, z) - self.dot(x, z) * self.dot(z, y);
        Ok(Scalar::new(value, 0.0))
    }

    fn magnitude(&self, x: &Vector) -> Result<f64> {
        self.check(x)?;
        Ok(self.dot(x, x).max(0.0).sqrt())
    }
}

/// The same 2-inner product evaluated through the double sum, independent
/// of the determinant route.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleSumEvaluator {
    inner: GridEvaluator,
}

impl DoubleSumEvaluator {
    pub fn new(grid: &QuadratureGrid, phi: &[f64]) -> Result<Self> {
        Ok(Self {
            inner: GridEvaluator::new(grid, phi)?,
        })
    }
}

impl TwoInner for DoubleSumEvaluator {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn field(&self) -> FieldTag {
        FieldTag::Real
    }

    fn two_inner(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Scalar> {
        for v in [x, y, z] {
            self.inner.check(v)?;
        }
        let re = |v: &Vector| v.entries().iter().map(|s| s.re).collect::<Vec<_>>();
        let value = double_sum(&self.inner.mu, &re(x), &re(y), &re(z), Execution::Sequential);
        Ok(Scalar::new(value, 0.0))
    }

    fn magnitude(&self, x: &Vector) -> Result<f64> {
        self.inner.magnitude(x)
    }
}
