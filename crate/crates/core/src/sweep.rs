//! Seeded randomized sweeps.
//!
//! Every sweep runs its trials through [`crate::par`], trial `i` of a group
//! drawing from `SeededGenerator::new(seed).fork(i)`, and merges per-trial
//! tallies in index order. Reports are therefore identical across runs and
//! across sequential and parallel execution.
//!
//! Property ids are `<sweep>/<property>/<field>` for the vector-space sweeps
//! and `integral/<property>` for the grid sweeps.

use crate::axioms::{axiom_suite_with, Axiom};
use crate::error::{Error, Result};
use crate::integral::{
    integral_report, synchronous, DoubleSumEvaluator, GridEvaluator, QuadratureGrid, SyncOptions,
    WeightedTriple, DET_BOUNDS,
};
use crate::numeric::{sample_vector, singular_values, FieldTag, Scalar, SeededGenerator, Tolerance, Vector};
use crate::outcome::{PropertyOutcome, Tally};
use crate::par::{try_map_indexed, Execution};
use crate::reverse::{
    additive_reverse, evaluate_all, extremal_instance, i_identity, sharpness_probe, triangle_reverse, InequalityId,
    PositivePair, ScalarPair, SharpTheorem,
};
use crate::space::{two_norm_sq, TwoInner, TwoInnerEvaluator};

/// Retry budget per trial for rejection sampling.
pub const MAX_ATTEMPTS: usize = 1000;

/// Offset below the sharp constant used by the sharpness checks.
pub const PROBE_OFFSET: f64 = 1e-4;

/// Bounds checked by the conditional sweeps.
pub const SECTION_TWO_BOUNDS: [InequalityId; 7] = [
    InequalityId::Additive,
    InequalityId::Quotient,
    InequalityId::QuotientGap,
    InequalityId::PositiveQuotient,
    InequalityId::PositiveDifference,
    InequalityId::PositiveGap,
    InequalityId::Triangle,
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub seed: u64,
    /// Trials per (field, dimension) group.
    pub trials: usize,
    pub dims: Vec<usize>,
    pub fields: Vec<FieldTag>,
    pub tol: Tolerance,
    pub exec: Execution,
}

impl SweepConfig {
    pub fn new(seed: u64, trials: usize, dims: Vec<usize>, fields: Vec<FieldTag>) -> Result<Self> {
        let cfg = Self {
            seed,
            trials,
            dims,
            fields,
            tol: Tolerance::DEFAULT,
            exec: Execution::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidInput("trials must be >= 1".into()));
        }
        if self.dims.is_empty() || self.fields.is_empty() {
            return Err(Error::InvalidInput("at least one dimension and one field are required".into()));
        }
        if let Some(d) = self.dims.iter().find(|d| **d < 2) {
            return Err(Error::InvalidDimension(format!("dimensions must be >= 2, got {d}")));
        }
        Ok(())
    }
}

/// Builds the evaluator under test for a (dimension, field) group.
pub trait EvaluatorFactory: Sync {
    type Ev: TwoInner;
    fn build(&self, dim: usize, field: FieldTag) -> Result<Self::Ev>;
}

/// The induced 2-inner product of the unweighted standard inner product.
#[derive(Debug, Clone, Copy, Default)]
pub struct Induced;

impl EvaluatorFactory for Induced {
    type Ev = TwoInnerEvaluator;
    fn build(&self, dim: usize, field: FieldTag) -> Result<TwoInnerEvaluator> {
        TwoInnerEvaluator::unit(dim, field)
    }
}

/// Adds `delta` to every value of the induced 2-inner product. A deliberate
/// defect for exercising the failure path of the sweeps.
#[derive(Debug, Clone)]
pub struct Perturbed<E> {
    pub inner: E,
    pub delta: f64,
}

impl<E: TwoInner> TwoInner for Perturbed<E> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn field(&self) -> FieldTag {
        self.inner.field()
    }

    fn two_inner(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Scalar> {
        Ok(self.inner.two_inner(x, y, z)? + Scalar::new(self.delta, 0.0))
    }

    fn magnitude(&self, x: &Vector) -> Result<f64> {
        self.inner.magnitude(x)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PerturbedInduced {
    pub delta: f64,
}

impl EvaluatorFactory for PerturbedInduced {
    type Ev = Perturbed<TwoInnerEvaluator>;
    fn build(&self, dim: usize, field: FieldTag) -> Result<Self::Ev> {
        Ok(Perturbed {
            inner: TwoInnerEvaluator::unit(dim, field)?,
            delta: self.delta,
        })
    }
}

/// Named tallies kept in a fixed order.
#[derive(Debug, Clone, Default)]
struct Board {
    ids: Vec<String>,
    tallies: Vec<Tally>,
    trials: Vec<usize>,
}

impl Board {
    fn merge(&mut self, id: String, trials: usize, tally: &Tally) {
        match self.ids.iter().position(|i| *i == id) {
            Some(k) => {
                self.tallies[k].merge(tally);
                self.trials[k] += trials;
            }
            None => {
                self.ids.push(id);
                self.tallies.push(*tally);
                self.trials.push(trials);
            }
        }
    }

    fn outcomes(&self) -> Vec<PropertyOutcome> {
        self.ids
            .iter()
            .zip(&self.tallies)
            .zip(&self.trials)
            .map(|((id, t), n)| PropertyOutcome::from_tally(id.clone(), *n, t))
            .collect()
    }
}

/// Runs `n` trials, each filling `k` tallies, and merges them in index order.
/// A trial that reports an internal inconsistency is recorded as a failure
/// in the extra last tally instead of aborting the sweep.
fn run_trials<F>(n: usize, k: usize, exec: Execution, f: F) -> Result<Vec<Tally>>
where
    F: Fn(usize, &mut [Tally]) -> Result<()> + Sync + Send,
{
    let per = try_map_indexed(n, exec, |i| {
        let mut t = vec![Tally::default(); k + 1];
        match f(i, &mut t[..k]) {
            Ok(()) => t[k].record_flag(i, true),
            Err(Error::InternalConsistency(_)) => t[k].record_flag(i, false),
            Err(e) => return Err(e),
        }
        Ok(t)
    })?;
    let mut total = vec![Tally::default(); k + 1];
    for t in &per {
        for (a, b) in total.iter_mut().zip(t) {
            a.merge(b);
        }
    }
    Ok(total)
}

fn groups(cfg: &SweepConfig) -> impl Iterator<Item = (FieldTag, usize)> + '_ {
    cfg.fields.iter().flat_map(move |&f| cfg.dims.iter().map(move |&d| (f, d)))
}

/// The full axiom suite per (field, dimension), merged over dimensions.
pub fn axiom_sweep<F: EvaluatorFactory>(cfg: &SweepConfig, factory: &F) -> Result<Vec<PropertyOutcome>> {
    cfg.validate()?;
    let mut board = Board::default();
    let gen = SeededGenerator::new(cfg.seed);
    for (field, dim) in groups(cfg) {
        let ev = factory.build(dim, field)?;
        let report = axiom_suite_with(&ev, &gen, cfg.trials, cfg.tol, cfg.exec)?;
        for (axiom, o) in Axiom::ALL.iter().zip(&report.outcomes) {
            let tally = Tally {
                checked: o.checked,
                violations: o.violations,
                max_residual: o.max_residual,
                worst_ratio: o.worst_ratio,
                worst_trial: o.worst_trial,
            };
            board.merge(format!("axiom/{}/{field}", axiom.name()), cfg.trials, &tally);
        }
    }
    Ok(board.outcomes())
}

/// CBS gap on triples spanning at most two dimensions, where it must vanish.
///
/// Trials cycle through `x = alpha y + beta z`, `z = alpha x + beta y` and
/// `y = alpha x`.
pub fn rank_two_sweep<F: EvaluatorFactory>(cfg: &SweepConfig, factory: &F) -> Result<Vec<PropertyOutcome>> {
    cfg.validate()?;
    let mut board = Board::default();
    let gen = SeededGenerator::new(cfg.seed);
    for (field, dim) in groups(cfg) {
        let ev = factory.build(dim, field)?;
        let t = run_trials(cfg.trials, 1, cfg.exec, |i, t| {
            let mut g = gen.fork(i as u64);
            let u = sample_vector(&mut g, dim, field)?;
            let v = sample_vector(&mut g, dim, field)?;
            let alpha = g.next_scalar(field);
            let beta = g.next_scalar(field);
            let combo = &u.scale(alpha) + &v.scale(beta);
            let (x, y, z) = match i % 3 {
                0 => (combo, u, v),
                1 => (u, v, combo),
                _ => (u.clone(), u.scale(alpha), v),
            };
            let xx = ev.two_inner(&x, &x, &z)?.re;
            let yy = ev.two_inner(&y, &y, &z)?.re;
            let xy = ev.two_inner(&x, &y, &z)?;
            let gap = xx * yy - xy.norm_sqr();
            let (nx, ny, nz) = (ev.magnitude(&x)?, ev.magnitude(&y)?, ev.magnitude(&z)?);
            let scale = (nx * ny * nz * nz).powi(2);
            t[0].record(i, gap.abs(), scale, cfg.tol);
            Ok(())
        })?;
        board.merge(format!("cbs-rank2/gap-vanishes/{field}"), cfg.trials, &t[0]);
        board.merge(format!("cbs-rank2/consistency/{field}"), cfg.trials, &t[1]);
    }
    Ok(board.outcomes())
}

/// Identities that hold with no hypothesis: the equivalence of the two forms
/// of the condition, `I1 - I2 = gap`, `I1 <= 1/4 |A - a|^2 |y|z|^4` and the
/// triangle identity. `a`, `A` are random scalars of the field.
pub fn identity_sweep<F: EvaluatorFactory>(cfg: &SweepConfig, factory: &F) -> Result<Vec<PropertyOutcome>> {
    cfg.validate()?;
    const NAMES: [&str; 4] = ["equivalence", "i1-i2-gap", "step-bound", "triangle-identity"];
    let mut board = Board::default();
    let gen = SeededGenerator::new(cfg.seed);
    for (field, dim) in groups(cfg) {
        let ev = factory.build(dim, field)?;
        let t = run_trials(cfg.trials, NAMES.len(), cfg.exec, |i, t| {
            let mut g = gen.fork(i as u64);
            let x = sample_vector(&mut g, dim, field)?;
            let y = sample_vector(&mut g, dim, field)?;
            let z = sample_vector(&mut g, dim, field)?;
            let pair = ScalarPair::new(g.next_scalar(field) * 2.0, g.next_scalar(field) * 2.0, field)?;
            let id = i_identity(&ev, &x, &y, &z, pair)?;
            let cond = crate::reverse::condition_check(&ev, &x, &y, &z, pair, cfg.tol)?;
            t[0].record(i, cond.equivalence_residual, cond.scale, cfg.tol);
            t[1].record(i, id.residual, id.scale, cfg.tol);
            t[2].record(i, (id.i1 - id.i1_bound).max(0.0), id.scale, cfg.tol);
            let pp = PositivePair::new(1.0, 2.0)?;
            let tri = triangle_reverse(&ev, &x, &y, &z, pp, cfg.tol)?;
            t[3].record(i, tri.identity_residual, tri.identity_scale, cfg.tol);
            Ok(())
        })?;
        for (k, name) in NAMES.iter().enumerate() {
            board.merge(format!("identity/{name}/{field}"), cfg.trials, &t[k]);
        }
        board.merge(format!("identity/consistency/{field}"), cfg.trials, &t[NAMES.len()]);
    }
    Ok(board.outcomes())
}

/// How conditional-bound instances are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Draw {
    /// Independent random `x, y, z` and endpoints (`x` shrunk by a uniform
    /// factor), redrawn until the hypothesis holds.
    Rejection,
    /// `x` placed inside the hypothesis ball around `(a + A)/2 y`; every
    /// sixteenth trial lands on its boundary.
    Targeted,
}

impl Draw {
    pub fn name(self) -> &'static str {
        match self {
            Draw::Rejection => "conditional",
            Draw::Targeted => "targeted",
        }
    }
}

/// Endpoints for trial `i`: even trials use positive real `m < M`, `m`
/// log-uniform on `[2^-10, 2)`, so that every bound applies; odd trials use
/// arbitrary scalars of the field.
fn draw_pair(g: &mut SeededGenerator, field: FieldTag, i: usize) -> Result<ScalarPair> {
    if i.is_multiple_of(2) {
        let m = g.next_range(-10.0f64, 1.0).exp2();
        let big = m + g.next_range(0.05, 6.0);
        Ok(PositivePair::new(m, big)?.as_scalar_pair())
    } else {
        let a = g.next_scalar(field) * 2.0;
        let spread = g.next_scalar(field) * 6.0;
        ScalarPair::new(a, a + spread, field)
    }
}

fn draw_instance(
    ev: &impl TwoInner,
    g: &mut SeededGenerator,
    dim: usize,
    field: FieldTag,
    i: usize,
    draw: Draw,
    tol: Tolerance,
) -> Result<Option<(Vector, Vector, Vector, ScalarPair)>> {
    let y = sample_vector(g, dim, field)?;
    let z = sample_vector(g, dim, field)?;
    let pair = draw_pair(g, field, i)?;
    let x = match draw {
        Draw::Rejection => {
            let t = g.next_unit();
            sample_vector(g, dim, field)?.scale(Scalar::new(t, 0.0))
        }
        Draw::Targeted => {
            let w = sample_vector(g, dim, field)?;
            let nw = two_norm_sq(ev, &w, &z, tol)?.sqrt();
            let ny = two_norm_sq(ev, &y, &z, tol)?.sqrt();
            if nw < 1e-3 || ny < 1e-3 {
                return Ok(None);
            }
            let t = if i.is_multiple_of(16) { 1.0 } else { g.next_unit() };
            let radius = 0.5 * pair.spread() * ny * t / nw;
            &y.scale(pair.center()) + &w.scale(Scalar::new(radius, 0.0))
        }
    };
    let cond = crate::reverse::condition_check(ev, &x, &y, &z, pair, tol)?;
    Ok(cond.holds.then_some((x, y, z, pair)))
}

/// Every applicable bound on instances satisfying the hypothesis.
pub fn conditional_sweep<F: EvaluatorFactory>(cfg: &SweepConfig, factory: &F, draw: Draw) -> Result<Vec<PropertyOutcome>> {
    cfg.validate()?;
    let n = SECTION_TWO_BOUNDS.len();
    let mut board = Board::default();
    let gen = SeededGenerator::new(cfg.seed);
    for (field, dim) in groups(cfg) {
        let ev = factory.build(dim, field)?;
        let t = run_trials(cfg.trials, n + 1, cfg.exec, |i, t| {
            let mut g = gen.fork(i as u64);
            let mut found = None;
            for _ in 0..MAX_ATTEMPTS {
                if let Some(inst) = draw_instance(&ev, &mut g, dim, field, i, draw, cfg.tol)? {
                    found = Some(inst);
                    break;
                }
            }
            t[n].record_flag(i, found.is_some());
            let Some((x, y, z, pair)) = found else { return Ok(()) };
            let report = evaluate_all(&ev, &x, &y, &z, pair, cfg.tol)?;
            for b in report.bounds.iter().filter(|b| b.hypothesis_ok) {
                let k = SECTION_TWO_BOUNDS.iter().position(|id| *id == b.inequality_id).expect("known id");
                let shortfall = (-b.slack).max(-b.chain_slack()).max(0.0);
                let shortfall = if shortfall.is_nan() { f64::INFINITY } else { shortfall };
                t[k].record(i, shortfall, b.scale, cfg.tol);
            }
            Ok(())
        })?;
        let name = draw.name();
        for (k, id) in SECTION_TWO_BOUNDS.iter().enumerate() {
            board.merge(format!("{name}/{id}/{field}"), cfg.trials, &t[k]);
        }
        board.merge(format!("{name}/accepted/{field}"), cfg.trials, &t[n]);
        board.merge(format!("{name}/consistency/{field}"), cfg.trials, &t[n + 1]);
    }
    Ok(board.outcomes())
}

/// `y`, `m` orthonormal modulo `z`, built by Gram-Schmidt in the 2-inner
/// product from random vectors.
fn orthonormal_mod(
    ev: &impl TwoInner,
    g: &mut SeededGenerator,
    dim: usize,
    field: FieldTag,
    tol: Tolerance,
) -> Result<Option<(Vector, Vector, Vector)>> {
    let y0 = sample_vector(g, dim, field)?;
    let m0 = sample_vector(g, dim, field)?;
    let z = sample_vector(g, dim, field)?;
    let sv = singular_values(&[&y0, &m0, &z])?;
    if sv[2] < 0.05 * sv[0] {
        return Ok(None);
    }
    let unit = |v: &Vector| -> Result<Vector> {
        let n = two_norm_sq(ev, v, &z, tol)?.sqrt();
        Ok(v.scale(Scalar::new(1.0 / n, 0.0)))
    };
    let y = unit(&y0)?;
    let m1 = &m0 - &y.scale(ev.two_inner(&m0, &y, &z)?);
    let m = unit(&m1)?;
    Ok(Some((y, m, z)))
}

/// Extremal instances must attain equality in the additive bound, and the
/// sharpness probes must separate the sharp constants from anything
/// [`PROBE_OFFSET`] below them. Dimensions below 3 are skipped.
pub fn sharpness_sweep<F: EvaluatorFactory>(cfg: &SweepConfig, factory: &F) -> Result<Vec<PropertyOutcome>> {
    cfg.validate()?;
    let mut board = Board::default();
    let gen = SeededGenerator::new(cfg.seed);
    for (field, dim) in groups(cfg).filter(|(_, d)| *d >= 3) {
        let ev = factory.build(dim, field)?;
        let t = run_trials(cfg.trials, 2, cfg.exec, |i, t| {
            let mut g = gen.fork(i as u64);
            let mut basis = None;
            for _ in 0..MAX_ATTEMPTS {
                if let Some(b) = orthonormal_mod(&ev, &mut g, dim, field, cfg.tol)? {
                    basis = Some(b);
                    break;
                }
            }
            let Some((y, m, z)) = basis else {
                t[0].record_flag(i, false);
                return Ok(());
            };
            let a = g.next_scalar(field);
            let pair = ScalarPair::new(a, a + g.next_scalar(field) + 0.1, field)?;
            let x = extremal_instance(&ev, &y, &m, &z, pair)?;
            let b = additive_reverse(&ev, &x, &y, &z, pair, cfg.tol)?;
            t[0].record(i, b.slack.abs(), b.scale, cfg.tol);
            t[1].record_flag(i, b.hypothesis_ok);
            Ok(())
        })?;
        board.merge(format!("sharp/extremal-tight/{field}"), cfg.trials, &t[0]);
        board.merge(format!("sharp/extremal-admissible/{field}"), cfg.trials, &t[1]);
        board.merge(format!("sharp/consistency/{field}"), cfg.trials, &t[2]);

        for theorem in [SharpTheorem::Additive, SharpTheorem::Quotient] {
            let c = theorem.sharp_constant();
            let mut tally = Tally::default();
            tally.record_flag(0, sharpness_probe(&ev, c - PROBE_OFFSET, theorem, cfg.tol)?.is_some());
            tally.record_flag(1, sharpness_probe(&ev, c, theorem, cfg.tol)?.is_none());
            board.merge(format!("sharp/probe-{}/{field}", theorem.label()), 2, &tally);
        }
    }
    Ok(board.outcomes())
}

/// The property suites behind `verify`: axioms, rank-two CBS, identities and
/// both conditional-bound generators.
pub fn verify_all<F: EvaluatorFactory>(cfg: &SweepConfig, factory: &F) -> Result<Vec<PropertyOutcome>> {
    let mut out = axiom_sweep(cfg, factory)?;
    out.extend(rank_two_sweep(cfg, factory)?);
    out.extend(identity_sweep(cfg, factory)?);
    out.extend(conditional_sweep(cfg, factory, Draw::Rejection)?);
    out.extend(conditional_sweep(cfg, factory, Draw::Targeted)?);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSweepConfig {
    pub seed: u64,
    /// Number of random grids (or instances).
    pub count: usize,
    /// Largest node count of a random grid.
    pub max_nodes: usize,
    pub tol: Tolerance,
    pub exec: Execution,
}

impl GridSweepConfig {
    pub fn new(seed: u64, count: usize, max_nodes: usize) -> Result<Self> {
        if count == 0 || max_nodes < 3 {
            return Err(Error::InvalidInput("need count >= 1 and max_nodes >= 3".into()));
        }
        Ok(Self {
            seed,
            count,
            max_nodes,
            tol: Tolerance::DEFAULT,
            exec: Execution::default(),
        })
    }
}

/// Increasing nodes with positive weights of random size.
fn random_grid(g: &mut SeededGenerator, max_nodes: usize) -> Result<QuadratureGrid> {
    let n = 3 + (g.next_u64() % (max_nodes as u64 - 2)) as usize;
    let mut s = g.next_symmetric();
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for _ in 0..n {
        nodes.push(s);
        weights.push(g.next_range(0.05, 1.0) / n as f64);
        s += g.next_range(0.1, 1.0) / n as f64;
    }
    QuadratureGrid::new(nodes, weights)
}

fn random_samples(g: &mut SeededGenerator, n: usize) -> Vec<f64> {
    (0..n).map(|_| g.next_symmetric()).collect()
}

/// `phi` in `[0, 2)`, with about one node in ten unweighted when `zeros`.
fn random_phi(g: &mut SeededGenerator, n: usize, zeros: bool) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let p = g.next_range(0.1, 2.0);
            if zeros && g.next_unit() < 0.1 {
                0.0
            } else {
                p
            }
        })
        .collect()
}

/// Nondecreasing piecewise-linear samples: cumulative sums of nonnegative
/// increments, with flat runs.
fn increasing(g: &mut SeededGenerator, n: usize) -> Vec<f64> {
    let mut v = g.next_symmetric();
    (0..n)
        .map(|_| {
            let step = g.next_unit();
            if step > 0.2 {
                v += step / n as f64;
            }
            v
        })
        .collect()
}

/// Nonvanishing `h` of random sign.
fn nonvanishing(g: &mut SeededGenerator, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let mag = g.next_range(0.2, 1.2);
            if g.next_unit() < 0.3 {
                -mag
            } else {
                mag
            }
        })
        .collect()
}

/// Double-sum and determinant forms agree on random grids.
pub fn formula_sweep(cfg: &GridSweepConfig) -> Result<Vec<PropertyOutcome>> {
    let gen = SeededGenerator::new(cfg.seed);
    let t = run_trials(cfg.count, 1, cfg.exec, |i, t| {
        let mut g = gen.fork(i as u64);
        let grid = random_grid(&mut g, cfg.max_nodes)?;
        let n = grid.len();
        let triple = WeightedTriple::new(
            random_samples(&mut g, n),
            random_samples(&mut g, n),
            random_samples(&mut g, n),
            random_phi(&mut g, n, true),
        )?;
        let r = crate::integral::two_inner_phi_with(&triple, &grid, Execution::Sequential)?;
        t[0].record(i, r.cross_residual, r.scale, cfg.tol);
        Ok(())
    })?;
    let mut board = Board::default();
    board.merge("integral/formula-equivalence".into(), cfg.count, &t[0]);
    board.merge("integral/formula-consistency".into(), cfg.count, &t[1]);
    Ok(board.outcomes())
}

/// Synchronous `f/h`, `g/h` force `(f, g | h) >= 0`.
pub fn sync_positivity_sweep(cfg: &GridSweepConfig) -> Result<Vec<PropertyOutcome>> {
    let gen = SeededGenerator::new(cfg.seed);
    let t = run_trials(cfg.count, 2, cfg.exec, |i, t| {
        let mut g = gen.fork(i as u64);
        let grid = random_grid(&mut g, cfg.max_nodes)?;
        let n = grid.len();
        let h = nonvanishing(&mut g, n);
        let phi = random_phi(&mut g, n, true);
        let q = increasing(&mut g, n);
        let p = increasing(&mut g, n);
        let p = if i % 4 == 3 { p.into_iter().rev().collect() } else { p };
        let f: Vec<f64> = q.iter().zip(&h).map(|(a, b)| a * b).collect();
        let gv: Vec<f64> = p.iter().zip(&h).map(|(a, b)| a * b).collect();
        let opts = SyncOptions {
            tol: cfg.tol,
            max_nodes: None,
            exec: Execution::Sequential,
        };
        let sync = synchronous(&q, &p, &grid, &phi, opts)?;
        t[1].record_flag(i, i % 4 == 3 || sync.synchronous);
        if sync.synchronous {
            let triple = WeightedTriple::new(f, gv, h, phi)?;
            let r = crate::integral::two_inner_phi_with(&triple, &grid, Execution::Sequential)?;
            t[0].record(i, (-r.two_inner_det).max(0.0), r.scale, cfg.tol);
        }
        Ok(())
    })?;
    let mut board = Board::default();
    board.merge("integral/sync-positivity".into(), cfg.count, &t[0]);
    board.merge("integral/sync-constructed".into(), cfg.count, &t[1]);
    board.merge("integral/sync-consistency".into(), cfg.count, &t[2]);
    Ok(board.outcomes())
}

/// Determinantal bounds on random monotone instances.
///
/// With increasing `u`, `v` and nonvanishing `h`, setting
/// `g = (u + v) h / (M - m)` and `f = m g + v h` makes `(M g - f)/h = u` and
/// `(f - m g)/h = v`, so the premise holds by construction. Every fourth
/// instance reverses `u` so that the premise usually fails and only the
/// flag path is exercised. Also checks that the gap bound agrees with the
/// additive reverse bound on the grid evaluator.
pub fn monotone_sweep(cfg: &GridSweepConfig) -> Result<Vec<PropertyOutcome>> {
    let gen = SeededGenerator::new(cfg.seed);
    let n_bounds = DET_BOUNDS.len();
    let t = run_trials(cfg.count, n_bounds + 3, cfg.exec, |i, t| {
        let mut g = gen.fork(i as u64);
        let grid = random_grid(&mut g, cfg.max_nodes)?;
        let n = grid.len();
        let h = nonvanishing(&mut g, n);
        let phi = random_phi(&mut g, n, false);
        let u = increasing(&mut g, n);
        let u: Vec<f64> = if i % 4 == 3 { u.into_iter().rev().collect() } else { u };
        let v = increasing(&mut g, n);
        let m = g.next_range(0.1, 2.0);
        let big = m + g.next_range(0.1, 3.0);
        let pair = PositivePair::new(m, big)?;
        let gv: Vec<f64> = (0..n).map(|k| (u[k] + v[k]) * h[k] / (big - m)).collect();
        let f: Vec<f64> = (0..n).map(|k| m * gv[k] + v[k] * h[k]).collect();
        let triple = WeightedTriple::new(f, gv, h, phi)?;
        let opts = SyncOptions {
            tol: cfg.tol,
            max_nodes: None,
            exec: Execution::Sequential,
        };
        let report = integral_report(&triple, pair, &grid, opts)?;
        t[n_bounds].record_flag(i, i % 4 == 3 || report.premise.holds);
        if report.premise.holds {
            t[n_bounds + 1].record_flag(i, report.premise.sign_ok);
            for (k, b) in report.bounds.iter().enumerate() {
                t[k].record(i, (-b.slack).max(0.0), b.scale, cfg.tol);
            }
        }

        let ev = GridEvaluator::new(&grid, &triple.phi)?;
        let vf = Vector::from_real(&triple.f)?;
        let vg = Vector::from_real(&triple.g)?;
        let vh = Vector::from_real(&triple.h)?;
        let a = additive_reverse(&ev, &vf, &vg, &vh, pair.as_scalar_pair(), cfg.tol)?;
        let d = &report.bounds[0];
        let e = report.determinant.entries;
        let quartic = e.ff * e.gg * e.hh * e.hh;
        let residual = (a.lhs - d.lhs).abs().max((a.rhs - d.rhs).abs());
        t[n_bounds + 2].record(i, residual, quartic.max(d.rhs.abs()), cfg.tol);
        Ok(())
    })?;
    let mut board = Board::default();
    for (k, id) in DET_BOUNDS.iter().enumerate() {
        board.merge(format!("integral/{id}"), cfg.count, &t[k]);
    }
    board.merge("integral/premise-by-construction".into(), cfg.count, &t[n_bounds]);
    board.merge("integral/premise-sign".into(), cfg.count, &t[n_bounds + 1]);
    board.merge("integral/agrees-with-2.3".into(), cfg.count, &t[n_bounds + 2]);
    board.merge("integral/monotone-consistency".into(), cfg.count, &t[n_bounds + 3]);
    Ok(board.outcomes())
}

/// Axiom suites on both discrete evaluators over `cfg.count` random grids,
/// `trials` tuples each.
pub fn discrete_axiom_sweep(cfg: &GridSweepConfig, trials: usize) -> Result<Vec<PropertyOutcome>> {
    let gen = SeededGenerator::new(cfg.seed);
    let mut board = Board::default();
    for i in 0..cfg.count {
        let mut g = gen.fork(i as u64);
        let grid = random_grid(&mut g, cfg.max_nodes)?;
        let phi = random_phi(&mut g, grid.len(), false);
        let det = GridEvaluator::new(&grid, &phi)?;
        let dbl = DoubleSumEvaluator::new(&grid, &phi)?;
        let a = axiom_suite_with(&det, &g, trials, cfg.tol, cfg.exec)?;
        let b = axiom_suite_with(&dbl, &g, trials, cfg.tol, cfg.exec)?;
        for (label, report) in [("determinant", a), ("double-sum", b)] {
            for o in &report.outcomes {
                let tally = Tally {
                    checked: o.checked,
                    violations: o.violations,
                    max_residual: o.max_residual,
                    worst_ratio: o.worst_ratio,
                    worst_trial: o.worst_trial,
                };
                board.merge(format!("integral/axiom/{}/{label}", o.id), trials, &tally);
            }
        }
    }
    Ok(board.outcomes())
}
