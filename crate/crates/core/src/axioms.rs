//! Sampled verification of the 2-inner-product axioms, the derived
//! algebraic properties and the 2-norm conditions.
//!
//! Every check is an identity or inequality that holds exactly in exact
//! arithmetic, so residuals are compared against the rounding band
//! `tol.abs + tol.rel * scale`, where `scale` is the natural magnitude of
//! the terms involved (products of underlying norms).

use serde::Serialize;

use crate::error::Result;
use crate::numeric::{sample_vector, singular_values, FieldTag, SeededGenerator, Tolerance, Vector};
use crate::outcome::{PropertyOutcome, Tally};
use crate::par::{try_map_indexed, Execution};
use crate::space::{polarize, two_norm_with, TwoInner};

/// Smallest singular value of `[x; z]` above which `(x, x | z) > 0` is
/// required strictly.
pub const WELL_CONDITIONED_SIGMA: f64 = 1e-6;

/// Properties checked by [`axiom_suite`], in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// `(x, x | z) >= 0`.
    Nonnegativity,
    /// `(x, x | z) = 0` when `z` is a multiple of `x`.
    DependenceVanishes,
    /// `(x, x | z) > 0` for well-conditioned independent `x, z`.
    StrictPositivity,
    /// `(x, x | z) = (z, z | x)`.
    SwapSymmetry,
    /// `(x, y | z) = conj((y, x | z))`.
    ConjugateSymmetry,
    /// `(a x, y | z) = a (x, y | z)`.
    Homogeneity,
    /// `(x + x', y | z) = (x, y | z) + (x', y | z)`.
    Additivity,
    /// `(x, a y | z) = conj(a) (x, y | z)`.
    ConjugateHomogeneity,
    /// `(x, y | a z) = |a|^2 (x, y | z)`.
    ThirdSlotScaling,
    /// `(z, y | z) = (y, z | z) = 0`.
    SelfOrthogonality,
    /// `(x, y | 0) = 0`.
    ZeroThirdSlot,
    /// `(x, y | z)` recovered from `(z, z | x +- y)` (and `x +- iy`).
    Polarization,
    /// `|(x, y | z)|^2 <= |x|z|^2 |y|z|^2`.
    CauchySchwarz,
    /// `|x|z| = |z|x|`.
    NormSymmetry,
    /// `|a x|z| = |a| |x|z|`.
    NormHomogeneity,
    /// `|x + x'|z| <= |x|z| + |x'|z|`.
    NormTriangle,
}

impl Axiom {
    pub const ALL: [Axiom; 16] = [
        Axiom::Nonnegativity,
        Axiom::DependenceVanishes,
        Axiom::StrictPositivity,
        Axiom::SwapSymmetry,
        Axiom::ConjugateSymmetry,
        Axiom::Homogeneity,
        Axiom::Additivity,
        Axiom::ConjugateHomogeneity,
        Axiom::ThirdSlotScaling,
        Axiom::SelfOrthogonality,
        Axiom::ZeroThirdSlot,
        Axiom::Polarization,
        Axiom::CauchySchwarz,
        Axiom::NormSymmetry,
        Axiom::NormHomogeneity,
        Axiom::NormTriangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Nonnegativity => "nonnegativity",
            Axiom::DependenceVanishes => "dependence-vanishes",
            Axiom::StrictPositivity => "strict-positivity",
            Axiom::SwapSymmetry => "swap-symmetry",
            Axiom::ConjugateSymmetry => "conjugate-symmetry",
            Axiom::Homogeneity => "homogeneity",
            Axiom::Additivity => "additivity",
            Axiom::ConjugateHomogeneity => "conjugate-homogeneity",
            Axiom::ThirdSlotScaling => "third-slot-scaling",
            Axiom::SelfOrthogonality => "self-orthogonality",
            Axiom::ZeroThirdSlot => "zero-third-slot",
            Axiom::Polarization => "polarization",
            Axiom::CauchySchwarz => "cauchy-schwarz",
            Axiom::NormSymmetry => "norm-symmetry",
            Axiom::NormHomogeneity => "norm-homogeneity",
            Axiom::NormTriangle => "norm-triangle",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub dim: usize,
    pub field: FieldTag,
    pub seed: u64,
    pub trials: usize,
    pub outcomes: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn outcome(&self, axiom: Axiom) -> &PropertyOutcome {
        &self.outcomes[axiom.index()]
    }

    pub fn failing(&self) -> impl Iterator<Item = &PropertyOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

pub fn axiom_suite<E: TwoInner>(ev: &E, gen: &SeededGenerator, trials: usize, tol: Tolerance) -> Result<SuiteReport> {
    axiom_suite_with(ev, gen, trials, tol, Execution::default())
}

/// Runs `trials` random tuples; trial `i` draws from `gen.fork(i)`.
pub fn axiom_suite_with<E: TwoInner>(
    ev: &E,
    gen: &SeededGenerator,
    trials: usize,
    tol: Tolerance,
    exec: Execution,
) -> Result<SuiteReport> {
    if trials == 0 {
        return Err(crate::Error::InvalidInput("trials must be >= 1".into()));
    }
    let per_trial = try_map_indexed(trials, exec, |i| {
        let mut g = gen.fork(i as u64);
        check_tuple(ev, &mut g, i, tol)
    })?;
    let mut totals = [Tally::default(); Axiom::ALL.len()];
    for tallies in &per_trial {
        for (total, t) in totals.iter_mut().zip(tallies) {
            total.merge(t);
        }
    }
    Ok(SuiteReport {
        dim: ev.dim(),
        field: ev.field(),
        seed: gen.seed(),
        trials,
        outcomes: Axiom::ALL
            .iter()
            .map(|a| PropertyOutcome::from_tally(a.name(), trials, &totals[a.index()]))
            .collect(),
    })
}

fn check_tuple<E: TwoInner>(
    ev: &E,
    g: &mut SeededGenerator,
    trial: usize,
    tol: Tolerance,
) -> Result<[Tally; Axiom::ALL.len()]> {
    let dim = ev.dim();
    let field = ev.field();
    let x = sample_vector(g, dim, field)?;
    let x2 = sample_vector(g, dim, field)?;
    let y = sample_vector(g, dim, field)?;
    let z = sample_vector(g, dim, field)?;
    let alpha = g.next_scalar(field);
    let beta = g.next_scalar(field);

    let nx = ev.magnitude(&x)?;
    let nx2 = ev.magnitude(&x2)?;
    let ny = ev.magnitude(&y)?;
    let nz = ev.magnitude(&z)?;
    let na = alpha.norm();

    let mut t = [Tally::default(); Axiom::ALL.len()];
    let mut rec = |a: Axiom, residual: f64, scale: f64| t[a.index()].record(trial, residual, scale, tol);

    let xxz = ev.two_inner(&x, &x, &z)?;
    let zzx = ev.two_inner(&z, &z, &x)?;
    let xyz = ev.two_inner(&x, &y, &z)?;
    let yxz = ev.two_inner(&y, &x, &z)?;
    let yyz = ev.two_inner(&y, &y, &z)?;
    let s_xxz = nx * nx * nz * nz;
    let s_xyz = nx * ny * nz * nz;

    rec(Axiom::Nonnegativity, (-xxz.re).max(0.0) + xxz.im.abs(), s_xxz);

    let dep = x.scale(beta);
    let nb = beta.norm();
    let r_dep = ev.two_inner(&x, &x, &dep)?.norm().max(ev.two_inner(&x, &x, &x)?.norm());
    rec(Axiom::DependenceVanishes, r_dep, nx.powi(4) * nb.max(1.0).powi(2));

    rec(Axiom::SwapSymmetry, (xxz - zzx).norm(), s_xxz);
    rec(Axiom::ConjugateSymmetry, (xyz - yxz.conj()).norm(), s_xyz);

    let hom = ev.two_inner(&x.scale(alpha), &y, &z)?;
    rec(Axiom::Homogeneity, (hom - alpha * xyz).norm(), na * s_xyz);

    let sum = ev.two_inner(&(&x + &x2), &y, &z)?;
    let x2yz = ev.two_inner(&x2, &y, &z)?;
    rec(Axiom::Additivity, (sum - xyz - x2yz).norm(), (nx + nx2) * ny * nz * nz);

    let chom = ev.two_inner(&x, &y.scale(alpha), &z)?;
    rec(Axiom::ConjugateHomogeneity, (chom - alpha.conj() * xyz).norm(), na * s_xyz);

    let third = ev.two_inner(&x, &y, &z.scale(alpha))?;
    rec(Axiom::ThirdSlotScaling, (third - xyz * alpha.norm_sqr()).norm(), na * na * s_xyz);

    let so = ev.two_inner(&z, &y, &z)?.norm().max(ev.two_inner(&y, &z, &z)?.norm());
    rec(Axiom::SelfOrthogonality, so, ny * nz.powi(3));

    let zero = Vector::zeros(dim)?;
    rec(Axiom::ZeroThirdSlot, ev.two_inner(&x, &y, &zero)?.norm(), 0.0);

    let pol = polarize(ev, &x, &y, &z)?;
    rec(Axiom::Polarization, (pol - xyz).norm(), (nx + ny).powi(2) * nz * nz);

    let cbs_scale = xxz.re.max(0.0) * yyz.re.max(0.0);
    let gap = xxz.re * yyz.re - xyz.norm_sqr();
    rec(Axiom::CauchySchwarz, (-gap).max(0.0), cbs_scale);

    // Norm checks compare square roots, so their band is on the norm scale.
    let n_xz = two_norm_with(ev, &x, &z, tol)?;
    let n_zx = two_norm_with(ev, &z, &x, tol)?;
    rec(Axiom::NormSymmetry, (n_xz - n_zx).abs(), nx * nz);

    let n_axz = two_norm_with(ev, &x.scale(alpha), &z, tol)?;
    rec(Axiom::NormHomogeneity, (n_axz - na * n_xz).abs(), na * nx * nz);

    let n_sum = two_norm_with(ev, &(&x + &x2), &z, tol)?;
    let n_x2z = two_norm_with(ev, &x2, &z, tol)?;
    rec(Axiom::NormTriangle, (n_sum - n_xz - n_x2z).max(0.0), (nx + nx2) * nz);

    // Strict positivity is only demanded where independence is numerically
    // unambiguous.
    let sv = singular_values(&[&x, &z])?;
    if sv.last().copied().unwrap_or(0.0) > WELL_CONDITIONED_SIGMA {
        t[Axiom::StrictPositivity.index()].record_flag(trial, xxz.re > 0.0);
    }

    Ok(t)
}
