//! Reverse Cauchy-Bunyakovsky-Schwarz inequalities in 2-inner-product
//! spaces.
//!
//! All bounds are localized by the hypothesis
//!
//! ```text
//! Re(A y - x, x - a y | z) >= 0    <=>    |x - (a + A)/2 y | z| <= |A - a|/2 |y|z|
//! ```
//!
//! i.e. `x` lies in the 2-norm ball around `(a + A)/2 y` of radius
//! `|A - a|/2 |y|z|`. A failed hypothesis never raises: the report is
//! flagged with `hypothesis_ok = false` and the bound sides are still
//! computed so sweeps can tabulate them.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{check_finite, FieldTag, Scalar, Tolerance, Vector, ZERO};
use crate::space::{triple_scale, two_norm_sq, TwoInner};

/// Endpoint scalars `a` and `A` of the localization hypothesis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarPair {
    /// `a`
    pub lo: Scalar,
    /// `A`
    pub hi: Scalar,
}

impl ScalarPair {
    pub fn new(lo: Scalar, hi: Scalar, field: FieldTag) -> Result<Self> {
        check_finite(lo, "a")?;
        check_finite(hi, "A")?;
        if !(field.admits(lo) && field.admits(hi)) {
            return Err(Error::InvalidInput(format!(
                "scalars ({lo}, {hi}) are not admissible in the {field} field"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn real(lo: f64, hi: f64) -> Result<Self> {
        Self::new(Scalar::new(lo, 0.0), Scalar::new(hi, 0.0), FieldTag::Real)
    }

    pub fn center(&self) -> Scalar {
        (self.lo + self.hi) * 0.5
    }

    /// `|A - a|`
    pub fn spread(&self) -> f64 {
        (self.hi - self.lo).norm()
    }

    /// `Re(conj(a) A)`
    pub fn re_product(&self) -> f64 {
        (self.lo.conj() * self.hi).re
    }
}

/// Positive endpoints `0 < m <= M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivePair {
    /// `m`
    pub lo: f64,
    /// `M`
    pub hi: f64,
}

impl PositivePair {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || hi < lo {
            return Err(Error::InvalidInput(format!(
                "positive pair needs M >= m > 0, got m={lo}, M={hi}"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn as_scalar_pair(&self) -> ScalarPair {
        ScalarPair {
            lo: Scalar::new(self.lo, 0.0),
            hi: Scalar::new(self.hi, 0.0),
        }
    }

    /// `1/2 (M + m) / sqrt(mM)`
    pub fn ratio_coefficient(&self) -> f64 {
        0.5 * (self.hi + self.lo) / (self.lo * self.hi).sqrt()
    }

    /// `1/2 (sqrt(M) - sqrt(m))^2 / sqrt(mM)`
    pub fn difference_coefficient(&self) -> f64 {
        let d = self.hi.sqrt() - self.lo.sqrt();
        0.5 * d * d / (self.lo * self.hi).sqrt()
    }

    /// `1/4 (M - m)^2 / (mM)`
    pub fn gap_coefficient(&self) -> f64 {
        let d = self.hi - self.lo;
        0.25 * d * d / (self.lo * self.hi)
    }

    /// `(sqrt(M) - sqrt(m)) / (mM)^(1/4)`
    pub fn triangle_coefficient(&self) -> f64 {
        (self.hi.sqrt() - self.lo.sqrt()) / (self.lo * self.hi).powf(0.25)
    }
}

/// Identifiers of the reported inequalities; the labels are part of the
/// report format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InequalityId {
    /// Additive reverse: `gap <= 1/4 |A - a|^2 |y|z|^4`.
    Additive,
    /// Quotient reverse: `|x|z||y|z| <= 1/2 Re[(conj A + conj a)(x,y|z)] / sqrt(Re(conj(a) A))`.
    Quotient,
    /// Positive-endpoint quotient reverse.
    PositiveQuotient,
    /// Additive form of the quotient reverse.
    QuotientGap,
    /// `|x|z||y|z| - Re(x,y|z)` bound.
    PositiveDifference,
    /// Positive-endpoint gap bound.
    PositiveGap,
    /// Reverse triangle inequality.
    Triangle,
    /// Determinantal counterparts on quadrature grids.
    DetGap,
    DetQuotient,
    DetQuotientPrinted,
    DetDifference,
    DetGapRatio,
    DetGapRatioPrinted,
    DetTriangle,
}

impl InequalityId {
    pub const ALL: [InequalityId; 14] = [
        InequalityId::Additive,
        InequalityId::Quotient,
        InequalityId::PositiveQuotient,
        InequalityId::QuotientGap,
        InequalityId::PositiveDifference,
        InequalityId::PositiveGap,
        InequalityId::Triangle,
        InequalityId::DetGap,
        InequalityId::DetQuotient,
        InequalityId::DetQuotientPrinted,
        InequalityId::DetDifference,
        InequalityId::DetGapRatio,
        InequalityId::DetGapRatioPrinted,
        InequalityId::DetTriangle,
    ];

    pub fn label(self) -> &'static str {
        match self {
            InequalityId::Additive => "2.3",
            InequalityId::Quotient => "2.9",
            InequalityId::PositiveQuotient => "2.15",
            InequalityId::QuotientGap => "2.16",
            InequalityId::PositiveDifference => "2.17",
            InequalityId::PositiveGap => "2.18",
            InequalityId::Triangle => "2.19",
            InequalityId::DetGap => "3.6",
            InequalityId::DetQuotient => "3.7",
            InequalityId::DetQuotientPrinted => "3.7-printed",
            InequalityId::DetDifference => "3.8",
            InequalityId::DetGapRatio => "3.9",
            InequalityId::DetGapRatioPrinted => "3.9-printed",
            InequalityId::DetTriangle => "3.10",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.label() == label)
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for InequalityId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionReport {
    /// `Re(A y - x, x - a y | z)`
    pub re_form: f64,
    /// `1/2 |A - a| |y|z| - |x - (a + A)/2 y | z|`
    pub ball_form: f64,
    /// `|1/4 |(A - a) y|z|^2 - |x - (a+A)/2 y|z|^2 - re_form|`
    pub equivalence_residual: f64,
    /// Magnitude used for the tolerance band of `re_form` and the residual.
    pub scale: f64,
    pub holds: bool,
}

/// One inequality evaluated on one instance.
///
/// `chain` lists every displayed side in the order the inequality asserts
/// them to be nondecreasing; `lhs` and `rhs` are the two sides named by the
/// primary statement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub inequality_id: InequalityId,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub hypothesis_ok: bool,
    /// Leading sharp constant of the statement (1/4 or 1/2, or 1 when the
    /// statement carries none).
    pub constant_used: f64,
    /// Full multiplier applied to the right-hand quantity.
    pub coefficient: f64,
    pub chain: Vec<f64>,
    /// `max(1, |lhs|, |rhs|, |chain|)`.
    pub scale: f64,
}

impl BoundReport {
    pub fn new(
        id: InequalityId,
        lhs: f64,
        rhs: f64,
        chain: Vec<f64>,
        constant_used: f64,
        coefficient: f64,
        hypothesis_ok: bool,
    ) -> Self {
        let scale = chain
            .iter()
            .chain([lhs, rhs].iter())
            .filter(|v| v.is_finite())
            .fold(1.0f64, |m, v| m.max(v.abs()));
        Self {
            inequality_id: id,
            lhs,
            rhs,
            slack: rhs - lhs,
            hypothesis_ok,
            constant_used,
            coefficient,
            chain,
            scale,
        }
    }

    /// Smallest step of the chain; negative means some link is out of order.
    pub fn chain_slack(&self) -> f64 {
        self.chain
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// Every link of the chain (and `lhs <= rhs`) holds within tolerance.
    pub fn holds(&self, tol: Tolerance) -> bool {
        let band = tol.bound(self.scale);
        self.slack >= -band && (self.chain.len() < 2 || self.chain_slack() >= -band)
    }

    /// A genuine counterexample: the hypothesis holds but the bound fails.
    pub fn violated(&self, tol: Tolerance) -> bool {
        self.hypothesis_ok && !self.holds(tol)
    }

    /// Equality within tolerance.
    pub fn tight(&self, tol: Tolerance) -> bool {
        self.slack.abs() <= tol.bound(self.scale)
    }
}

/// Cached 2-inner-product data for a triple.
struct Triple<'a> {
    x: &'a Vector,
    y: &'a Vector,
    z: &'a Vector,
    /// `(x, x | z)`
    xx: f64,
    /// `(y, y | z)`
    yy: f64,
    /// `(x, y | z)`
    xy: Scalar,
    mx: f64,
    my: f64,
    mz: f64,
}

impl<'a> Triple<'a> {
    fn new<E: TwoInner + ?Sized>(ev: &E, x: &'a Vector, y: &'a Vector, z: &'a Vector, tol: Tolerance) -> Result<Self> {
        Ok(Self {
            x,
            y,
            z,
            xx: two_norm_sq(ev, x, z, tol)?,
            yy: two_norm_sq(ev, y, z, tol)?,
            xy: ev.two_inner(x, y, z)?,
            mx: ev.magnitude(x)?,
            my: ev.magnitude(y)?,
            mz: ev.magnitude(z)?,
        })
    }

    fn gap(&self) -> f64 {
        self.xx * self.yy - self.xy.norm_sqr()
    }

    /// `|x|z| |y|z|`
    fn norm_product(&self) -> f64 {
        self.xx.sqrt() * self.yy.sqrt()
    }

    /// `(|x| + (|a| + |A|) |y|)^2 |z|^2`: magnitude of every term in the
    /// hypothesis forms.
    fn pair_scale(&self, pair: &ScalarPair) -> f64 {
        let r = self.mx + (pair.lo.norm() + pair.hi.norm()) * self.my;
        r * r * self.mz * self.mz
    }
}

pub fn condition_check<E: TwoInner + ?Sized>(
    ev: &E,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    pair: ScalarPair,
    tol: Tolerance,
) -> Result<ConditionReport> {
    let t = Triple::new(ev, x, y, z, tol)?;
    condition_from(ev, &t, &pair, tol)
}

fn condition_from<E: TwoInner + ?Sized>(ev: &E, t: &Triple<'_>, pair: &ScalarPair, tol: Tolerance) -> Result<ConditionReport> {
    let (x, y, z) = (t.x, t.y, t.z);
    let upper_gap = &y.scale(pair.hi) - x;
    let lower_gap = x - &y.scale(pair.lo);
    let re_form = ev.two_inner(&upper_gap, &lower_gap, z)?.re;

    let offset = x - &y.scale(pair.center());
    let offset_sq = two_norm_sq(ev, &offset, z, tol)?;
    let spread_vec = &y.scale(pair.hi) - &y.scale(pair.lo);
    let spread_sq = two_norm_sq(ev, &spread_vec, z, tol)?;
    let ball_form = 0.5 * pair.spread() * t.yy.sqrt() - offset_sq.sqrt();

    let scale = t.pair_scale(pair);
    let equivalence_residual = (0.25 * spread_sq - offset_sq - re_form).abs();
    Ok(ConditionReport {
        re_form,
        ball_form,
        equivalence_residual,
        scale,
        holds: re_form >= -tol.bound(scale),
    })
}

/// Both sides of the decomposition `I1 - I2 = gap`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IIdentity {
    /// `Re[(A |y|z|^2 - (x,y|z)) (conj (x,y|z) - conj(a) |y|z|^2)]`
    pub i1: f64,
    /// `|y|z|^2 Re(A y - x, x - a y | z)`
    pub i2: f64,
    pub gap: f64,
    /// `|I1 - I2 - gap|`
    pub residual: f64,
    /// `1/4 |A - a|^2 |y|z|^4`, the unconditional upper bound on `I1`.
    pub i1_bound: f64,
    pub scale: f64,
}

pub fn i_identity<E: TwoInner + ?Sized>(ev: &E, x: &Vector, y: &Vector, z: &Vector, pair: ScalarPair) -> Result<IIdentity> {
    let tol = Tolerance::DEFAULT;
    let t = Triple::new(ev, x, y, z, tol)?;
    let cond = condition_from(ev, &t, &pair, tol)?;
    Ok(i_identity_from(&t, &pair, &cond))
}

fn i_identity_from(t: &Triple<'_>, pair: &ScalarPair, cond: &ConditionReport) -> IIdentity {
    let yy = Scalar::new(t.yy, 0.0);
    let i1 = ((pair.hi * yy - t.xy) * (t.xy.conj() - pair.lo.conj() * yy)).re;
    let i2 = t.yy * cond.re_form;
    let gap = t.gap();
    let spread = pair.spread();
    IIdentity {
        i1,
        i2,
        gap,
        residual: (i1 - i2 - gap).abs(),
        i1_bound: 0.25 * spread * spread * t.yy * t.yy,
        scale: cond.scale * t.my * t.my * t.mz * t.mz,
    }
}

/// `0 <= gap <= 1/4 |A - a|^2 |y|z|^4`.
pub fn additive_reverse<E: TwoInner + ?Sized>(
    ev: &E,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    pair: ScalarPair,
    tol: Tolerance,
) -> Result<BoundReport> {
    let t = Triple::new(ev, x, y, z, tol)?;
    let cond = condition_from(ev, &t, &pair, tol)?;
    Ok(additive_from(&t, &pair, &cond))
}

fn additive_from(t: &Triple<'_>, pair: &ScalarPair, cond: &ConditionReport) -> BoundReport {
    let gap = t.gap();
    let spread = pair.spread();
    let coefficient = 0.25 * spread * spread;
    let rhs = coefficient * t.yy * t.yy;
    BoundReport::new(InequalityId::Additive, gap, rhs, vec![0.0, gap, rhs], 0.25, coefficient, cond.holds)
}

/// Quotient reverse and its additive form, valid when `Re(conj(a) A) > 0`.
pub fn quotient_reverse<E: TwoInner + ?Sized>(
    ev: &E,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    pair: ScalarPair,
    tol: Tolerance,
) -> Result<(BoundReport, BoundReport)> {
    let t = Triple::new(ev, x, y, z, tol)?;
    let cond = condition_from(ev, &t, &pair, tol)?;
    Ok(quotient_from(&t, &pair, &cond))
}

fn quotient_from(t: &Triple<'_>, pair: &ScalarPair, cond: &ConditionReport) -> (BoundReport, BoundReport) {
    let rp = pair.re_product();
    // Without Re(conj(a) A) > 0 the right-hand sides are undefined (NaN).
    let ok = rp > 0.0 && cond.holds;
    let root = if rp > 0.0 { rp.sqrt() } else { f64::NAN };

    let lhs = t.norm_product();
    let mid = 0.5 * ((pair.hi.conj() + pair.lo.conj()) * t.xy).re / root;
    let rhs = 0.5 * (pair.hi + pair.lo).norm() * t.xy.norm() / root;
    let quotient = BoundReport::new(InequalityId::Quotient, lhs, rhs, vec![lhs, mid, rhs], 0.5, 0.5 / root, ok);

    let gap = t.gap();
    let spread = pair.spread();
    let coefficient = if rp > 0.0 { 0.25 * spread * spread / rp } else { f64::NAN };
    let bound = coefficient * t.xy.norm_sqr();
    let additive = BoundReport::new(
        InequalityId::QuotientGap,
        gap,
        bound,
        vec![0.0, gap, bound],
        0.25,
        coefficient,
        ok,
    );
    (quotient, additive)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositiveReports {
    pub condition: ConditionReport,
    pub quotient: BoundReport,
    pub difference: BoundReport,
    pub gap: BoundReport,
}

impl PositiveReports {
    pub fn bounds(&self) -> [&BoundReport; 3] {
        [&self.quotient, &self.difference, &self.gap]
    }
}

/// The three positive-endpoint bounds under `Re(M y - x, x - m y | z) >= 0`.
pub fn positive_reverse<E: TwoInner + ?Sized>(
    ev: &E,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    pair: PositivePair,
    tol: Tolerance,
) -> Result<PositiveReports> {
    let t = Triple::new(ev, x, y, z, tol)?;
    let cond = condition_from(ev, &t, &pair.as_scalar_pair(), tol)?;
    Ok(positive_from(&t, &pair, cond))
}

fn positive_from(t: &Triple<'_>, pair: &PositivePair, cond: ConditionReport) -> PositiveReports {
    let ok = cond.holds;
    let np = t.norm_product();
    let re = t.xy.re;
    let abs = t.xy.norm();

    let c = pair.ratio_coefficient();
    let quotient = BoundReport::new(
        InequalityId::PositiveQuotient,
        np,
        c * re,
        vec![np, c * re, c * abs],
        0.5,
        c,
        ok,
    );

    let d = pair.difference_coefficient();
    let difference = BoundReport::new(
        InequalityId::PositiveDifference,
        np - re,
        d * re,
        vec![0.0, np - abs, np - re, d * re, d * abs],
        0.5,
        d,
        ok,
    );

    let g = pair.gap_coefficient();
    let gap = t.gap();
    let gap_bound = BoundReport::new(
        InequalityId::PositiveGap,
        gap,
        g * re * re,
        vec![0.0, gap, t.xx * t.yy - re * re, g * re * re, g * abs * abs],
        0.25,
        g,
        ok,
    );

    PositiveReports {
        condition: cond,
        quotient,
        difference,
        gap: gap_bound,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleReport {
    pub bound: BoundReport,
    /// `|(|x|z| + |y|z|)^2 - |x+y|z|^2 - 2(|x|z||y|z| - Re(x,y|z))|`
    pub identity_residual: f64,
    pub identity_scale: f64,
}

/// `0 <= |x|z| + |y|z| - |x+y|z| <= (sqrt M - sqrt m)/(mM)^(1/4) sqrt(Re(x,y|z))`.
pub fn triangle_reverse<E: TwoInner + ?Sized>(
    ev: &E,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    pair: PositivePair,
    tol: Tolerance,
) -> Result<TriangleReport> {
    let t = Triple::new(ev, x, y, z, tol)?;
    let cond = condition_from(ev, &t, &pair.as_scalar_pair(), tol)?;
    triangle_from(ev, &t, &pair, &cond, tol)
}

fn triangle_from<E: TwoInner + ?Sized>(
    ev: &E,
    t: &Triple<'_>,
    pair: &PositivePair,
    cond: &ConditionReport,
    tol: Tolerance,
) -> Result<TriangleReport> {
    let sum = t.x + t.y;
    let sum_sq = two_norm_sq(ev, &sum, t.z, tol)?;
    let (nx, ny) = (t.xx.sqrt(), t.yy.sqrt());
    let re = t.xy.re;

    let identity_scale = (t.mx + t.my).powi(2) * t.mz * t.mz;
    let identity_residual = ((nx + ny).powi(2) - sum_sq - 2.0 * (nx * ny - re)).abs();

    if cond.holds && re < -tol.bound(triple_scale(ev, t.x, t.y, t.z)?) {
        return Err(Error::InternalConsistency(format!(
            "Re(x,y|z) = {re:e} is negative although the hypothesis holds"
        )));
    }
    let coefficient = pair.triangle_coefficient();
    let lhs = nx + ny - sum_sq.sqrt();
    let rhs = coefficient * re.max(0.0).sqrt();
    Ok(TriangleReport {
        bound: BoundReport::new(InequalityId::Triangle, lhs, rhs, vec![0.0, lhs, rhs], 1.0, coefficient, cond.holds),
        identity_residual,
        identity_scale,
    })
}

/// Every applicable report for one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceReport {
    pub condition: ConditionReport,
    pub identity: IIdentity,
    pub bounds: Vec<BoundReport>,
    pub triangle_identity_residual: Option<f64>,
}

/// Evaluates the additive and quotient bounds for `pair` and, when the pair
/// is real and positive, the positive-endpoint and triangle bounds too.
pub fn evaluate_all<E: TwoInner + ?Sized>(
    ev: &E,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    pair: ScalarPair,
    tol: Tolerance,
) -> Result<InstanceReport> {
    let t = Triple::new(ev, x, y, z, tol)?;
    let cond = condition_from(ev, &t, &pair, tol)?;
    let identity = i_identity_from(&t, &pair, &cond);
    let mut bounds = vec![additive_from(&t, &pair, &cond)];
    let (q, qg) = quotient_from(&t, &pair, &cond);
    bounds.push(q);
    bounds.push(qg);

    let mut triangle_identity_residual = None;
    if pair.lo.im == 0.0 && pair.hi.im == 0.0 {
        if let Ok(pp) = PositivePair::new(pair.lo.re, pair.hi.re) {
            let pos = positive_from(&t, &pp, cond);
            bounds.extend([pos.quotient, pos.difference, pos.gap]);
            let tri = triangle_from(ev, &t, &pp, &cond, tol)?;
            triangle_identity_residual = Some(tri.identity_residual);
            bounds.push(tri.bound);
        }
    }
    Ok(InstanceReport {
        condition: cond,
        identity,
        bounds,
        triangle_identity_residual,
    })
}

/// `x = (A + a)/2 y + (A - a)/2 m`, which meets the hypothesis with equality
/// and attains equality in the additive bound when `y`, `m` are orthonormal
/// modulo `z`.
pub fn extremal_instance<E: TwoInner + ?Sized>(
    ev: &E,
    y: &Vector,
    m_vec: &Vector,
    z: &Vector,
    pair: ScalarPair,
) -> Result<Vector> {
    let tol = Tolerance::DEFAULT;
    if pair.lo == pair.hi {
        return Err(Error::InvalidInstance("extremal instance needs a != A".into()));
    }
    let yy = two_norm_sq(ev, y, z, tol)?;
    let mm = two_norm_sq(ev, m_vec, z, tol)?;
    let ym = ev.two_inner(y, m_vec, z)?;
    let scale = triple_scale(ev, y, m_vec, z)?.max(1.0);
    if !tol.allows((yy - 1.0).abs(), 1.0) || !tol.allows((mm - 1.0).abs(), 1.0) {
        return Err(Error::InvalidInstance(format!(
            "y and m must have unit 2-norm (got |y|z|^2 = {yy}, |m|z|^2 = {mm})"
        )));
    }
    if !tol.allows(ym.norm(), scale) {
        return Err(Error::InvalidInstance(format!("y and m must be 2-orthogonal (got (y,m|z) = {ym})")));
    }
    Ok(&y.scale(pair.center()) + &m_vec.scale((pair.hi - pair.lo) * 0.5))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SharpTheorem {
    /// The additive reverse with constant 1/4.
    #[serde(rename = "thm2.1")]
    Additive,
    /// The quotient reverse with constant 1/2.
    #[serde(rename = "thm2.2")]
    Quotient,
}

impl SharpTheorem {
    pub fn label(self) -> &'static str {
        match self {
            SharpTheorem::Additive => "thm2.1",
            SharpTheorem::Quotient => "thm2.2",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        match label {
            "thm2.1" => Some(SharpTheorem::Additive),
            "thm2.2" => Some(SharpTheorem::Quotient),
            _ => None,
        }
    }

    pub fn sharp_constant(self) -> f64 {
        match self {
            SharpTheorem::Additive => 0.25,
            SharpTheorem::Quotient => 0.5,
        }
    }
}

/// An admissible instance on which the bound with the trial constant fails.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub theorem: SharpTheorem,
    pub constant: f64,
    pub x: Vector,
    pub y: Vector,
    pub z: Vector,
    pub pair: ScalarPair,
    /// Left side of the bound.
    pub lhs: f64,
    /// Right side evaluated with the trial constant.
    pub rhs: f64,
}

/// Returns a witness iff `constant` is below the sharp constant by more than
/// the rounding band, using the standard extremal constructions.
pub fn sharpness_probe<E: TwoInner + ?Sized>(
    ev: &E,
    constant: f64,
    which: SharpTheorem,
    tol: Tolerance,
) -> Result<Option<Witness>> {
    if !(constant.is_finite() && constant > 0.0) {
        return Err(Error::InvalidInput(format!("probe constant must be positive, got {constant}")));
    }
    let dim = ev.dim();
    let (x, y, z, pair, lhs, rhs) = match which {
        SharpTheorem::Additive => {
            if dim < 3 {
                return Err(Error::InvalidDimension(
                    "the additive extremal needs two vectors orthonormal modulo z, so dim >= 3".into(),
                ));
            }
            let z = Vector::basis(dim, 2)?;
            let y0 = Vector::basis(dim, 0)?;
            let y = y0.scale(Scalar::new(1.0 / two_norm_sq(ev, &y0, &z, tol)?.sqrt(), 0.0));
            let m0 = Vector::basis(dim, 1)?;
            let m1 = &m0 - &y.scale(ev.two_inner(&m0, &y, &z)?);
            let m = m1.scale(Scalar::new(1.0 / two_norm_sq(ev, &m1, &z, tol)?.sqrt(), 0.0));
            let pair = ScalarPair::new(ZERO, Scalar::new(2.0, 0.0), ev.field())?;
            let x = extremal_instance(ev, &y, &m, &z, pair)?;
            let (gap, yy) = {
                let t = Triple::new(ev, &x, &y, &z, tol)?;
                (t.gap(), t.yy)
            };
            let spread = pair.spread();
            let rhs = constant * spread * spread * yy * yy;
            (x, y, z, pair, gap, rhs)
        }
        SharpTheorem::Quotient => {
            let x = Vector::basis(dim, 0)?;
            let z = Vector::basis(dim, 1)?;
            let pair = ScalarPair::new(Scalar::new(1.0, 0.0), Scalar::new(1.0, 0.0), ev.field())?;
            let (lhs, xy) = {
                let t = Triple::new(ev, &x, &x, &z, tol)?;
                (t.norm_product(), t.xy)
            };
            let rhs = constant * ((pair.hi.conj() + pair.lo.conj()) * xy).re / pair.re_product().sqrt();
            (x.clone(), x, z, pair, lhs, rhs)
        }
    };
    let scale = 1f64.max(lhs.abs()).max(rhs.abs());
    if lhs - rhs > tol.bound(scale) {
        Ok(Some(Witness {
            theorem: which,
            constant,
            x,
            y,
            z,
            pair,
            lhs,
            rhs,
        }))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{I, ONE};
    use crate::space::TwoInnerEvaluator;
    use approx::assert_relative_eq;

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn r3() -> TwoInnerEvaluator {
        TwoInnerEvaluator::unit(3, FieldTag::Real).unwrap()
    }

    fn c3() -> TwoInnerEvaluator {
        TwoInnerEvaluator::unit(3, FieldTag::Complex).unwrap()
    }

    fn v(xs: &[f64]) -> Vector {
        Vector::from_real(xs).unwrap()
    }

    fn e(k: usize) -> Vector {
        Vector::basis(3, k).unwrap()
    }

    fn complex_pair() -> ScalarPair {
        ScalarPair::new(Scalar::new(1.0, -1.0), Scalar::new(1.0, 1.0), FieldTag::Complex).unwrap()
    }

    #[test]
    fn condition_examples() {
        let c = condition_check(&r3(), &v(&[1.0, 1.0, 0.0]), &e(0), &e(2), ScalarPair::real(0.0, 2.0).unwrap(), TOL).unwrap();
        assert_eq!(c.re_form, 0.0);
        assert!(c.holds);
        assert_eq!(c.ball_form, 0.0);

        let c = condition_check(&r3(), &v(&[2.0, 0.0, 0.0]), &e(0), &e(2), ScalarPair::real(1.0, 4.0).unwrap(), TOL).unwrap();
        assert_eq!(c.re_form, 2.0);
        assert!(c.holds && c.ball_form > 0.0);

        let c = condition_check(&r3(), &v(&[3.0, 0.0, 0.0]), &e(0), &e(2), ScalarPair::real(0.0, 1.0).unwrap(), TOL).unwrap();
        assert_eq!(c.re_form, -6.0);
        assert!(!c.holds && c.ball_form < 0.0);
        assert!(c.equivalence_residual <= 1e-12);
    }

    #[test]
    fn real_field_rejects_complex_pair() {
        assert!(ScalarPair::new(ZERO, I, FieldTag::Real).is_err());
        assert!(PositivePair::new(2.0, 1.0).is_err());
        assert!(PositivePair::new(0.0, 1.0).is_err());
    }

    #[test]
    fn i_identity_examples() {
        let id = i_identity(&r3(), &v(&[1.0, 1.0, 0.0]), &e(0), &e(2), ScalarPair::real(0.0, 2.0).unwrap()).unwrap();
        assert_eq!((id.i1, id.i2, id.gap), (1.0, 0.0, 1.0));
        assert_eq!(id.residual, 0.0);

        let id = i_identity(&r3(), &e(0), &e(0), &e(2), ScalarPair::real(1.0, 1.0).unwrap()).unwrap();
        assert_eq!((id.i1, id.i2, id.gap), (0.0, 0.0, 0.0));
    }

    #[test]
    fn additive_examples() {
        let b = additive_reverse(&r3(), &v(&[1.0, 1.0, 0.0]), &e(0), &e(2), ScalarPair::real(0.0, 2.0).unwrap(), TOL).unwrap();
        assert_eq!((b.lhs, b.rhs, b.slack), (1.0, 1.0, 0.0));
        assert!(b.hypothesis_ok && b.tight(TOL));

        let x = Vector::new(vec![ONE, I, ZERO]).unwrap();
        let b = additive_reverse(&c3(), &x, &e(0), &e(2), complex_pair(), TOL).unwrap();
        assert_eq!((b.lhs, b.rhs), (1.0, 1.0));
        assert!(b.hypothesis_ok);

        let b = additive_reverse(&r3(), &v(&[2.0, 0.0, 0.0]), &e(0), &e(2), ScalarPair::real(1.0, 4.0).unwrap(), TOL).unwrap();
        assert_eq!((b.lhs, b.rhs), (0.0, 2.25));
    }

    #[test]
    fn quotient_examples() {
        let (q, _) = quotient_reverse(&r3(), &e(0), &e(0), &e(2), ScalarPair::real(1.0, 1.0).unwrap(), TOL).unwrap();
        assert_eq!(q.lhs, 1.0);
        assert_eq!(q.chain[1], 1.0);
        assert!(q.hypothesis_ok && q.holds(TOL));

        let x = v(&[1.0, 0.5, 0.0]);
        let (q, g) = quotient_reverse(&r3(), &x, &e(0), &e(2), ScalarPair::real(0.5, 1.5).unwrap(), TOL).unwrap();
        assert_relative_eq!(q.lhs, 1.25f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(q.chain[1], 1.0 / 0.75f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(q.lhs, 1.118034, epsilon = 1e-6);
        assert_relative_eq!(q.chain[1], 1.154701, epsilon = 1e-6);
        assert_relative_eq!(g.lhs, 0.25, max_relative = 1e-15);
        assert_relative_eq!(g.rhs, 1.0 / 3.0, max_relative = 1e-15);
        assert!(q.hypothesis_ok && g.hypothesis_ok);

        let (q, g) = quotient_reverse(&c3(), &e(0), &e(0), &e(2), complex_pair(), TOL).unwrap();
        assert!(!q.hypothesis_ok && !g.hypothesis_ok);
    }

    #[test]
    fn positive_examples() {
        let x = v(&[1.0, 0.5, 0.0]);
        let p = positive_reverse(&r3(), &x, &e(0), &e(2), PositivePair::new(0.5, 1.5).unwrap(), TOL).unwrap();
        assert_relative_eq!(p.quotient.lhs, 1.118034, epsilon = 1e-6);
        assert_relative_eq!(p.quotient.rhs, 1.154701, epsilon = 1e-6);
        assert_relative_eq!(p.difference.lhs, 0.118034, epsilon = 1e-6);
        assert_relative_eq!(p.difference.rhs, 0.154701, epsilon = 1e-6);
        assert_relative_eq!(p.gap.lhs, 0.25, epsilon = 1e-12);
        assert_relative_eq!(p.gap.rhs, 1.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(p.quotient.slack, 0.036667, epsilon = 1e-6);
        assert_relative_eq!(p.gap.slack, 0.083333, epsilon = 1e-6);
        // The difference bound is the ratio bound shifted by Re(x,y|z).
        assert_relative_eq!(p.difference.rhs, p.quotient.rhs - 1.0, epsilon = 1e-12);
        assert!(p.bounds().iter().all(|b| b.hypothesis_ok && b.holds(TOL)));
    }

    #[test]
    fn positive_dependent_and_degenerate() {
        let y = v(&[0.3, -0.7, 0.2]);
        let z = v(&[0.1, 0.4, 0.9]);
        let x = y.scale(Scalar::new(2.0, 0.0));
        let p = positive_reverse(&r3(), &x, &y, &z, PositivePair::new(1.0, 4.0).unwrap(), TOL).unwrap();
        assert!(p.gap.lhs.abs() < 1e-15);
        assert!(p.condition.holds);

        let m = 1.7;
        let x = y.scale(Scalar::new(m, 0.0));
        let p = positive_reverse(&r3(), &x, &y, &z, PositivePair::new(m, m).unwrap(), TOL).unwrap();
        for b in p.bounds() {
            assert!(b.tight(TOL), "{:?}", b);
        }
        let t = triangle_reverse(&r3(), &x, &y, &z, PositivePair::new(m, m).unwrap(), TOL).unwrap();
        assert!(t.bound.tight(TOL));
    }

    #[test]
    fn triangle_examples() {
        let x = v(&[1.0, 0.5, 0.0]);
        let t = triangle_reverse(&r3(), &x, &e(0), &e(2), PositivePair::new(0.5, 1.5).unwrap(), TOL).unwrap();
        let expected_lhs = 1.25f64.sqrt() + 1.0 - 4.25f64.sqrt();
        assert_relative_eq!(t.bound.lhs, expected_lhs, max_relative = 1e-12);
        assert_relative_eq!(t.bound.lhs, 0.056481, epsilon = 1e-6);
        let expected_rhs = (1.5f64.sqrt() - 0.5f64.sqrt()) / 0.75f64.powf(0.25);
        assert_relative_eq!(t.bound.rhs, expected_rhs, max_relative = 1e-12);
        assert!(t.identity_residual < 1e-14);

        let t = triangle_reverse(&r3(), &e(0), &e(0), &e(2), PositivePair::new(1.0, 1.0).unwrap(), TOL).unwrap();
        assert_eq!((t.bound.lhs, t.bound.rhs), (0.0, 0.0));
    }

    #[test]
    fn extremal_examples() {
        let x = extremal_instance(&r3(), &e(0), &e(1), &e(2), ScalarPair::real(0.0, 2.0).unwrap()).unwrap();
        assert_eq!(x, v(&[1.0, 1.0, 0.0]));

        let x = extremal_instance(&c3(), &e(0), &e(1), &e(2), complex_pair()).unwrap();
        assert_eq!(x, Vector::new(vec![ONE, I, ZERO]).unwrap());
        let b = additive_reverse(&c3(), &x, &e(0), &e(2), complex_pair(), TOL).unwrap();
        assert!(b.tight(TOL));

        let err = extremal_instance(&r3(), &e(0), &e(1), &e(2), ScalarPair::real(1.0, 1.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::InvalidInstance(_)));
        let err = extremal_instance(&r3(), &v(&[2.0, 0.0, 0.0]), &e(1), &e(2), ScalarPair::real(0.0, 2.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::InvalidInstance(_)));
        let err = extremal_instance(&r3(), &e(0), &v(&[1.0, 1.0, 0.0]), &e(2), ScalarPair::real(0.0, 2.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::InvalidInstance(_)));
    }

    #[test]
    fn sharpness_examples() {
        let ev = r3();
        let w = sharpness_probe(&ev, 0.2499, SharpTheorem::Additive, TOL).unwrap().unwrap();
        assert_eq!(w.lhs, 1.0);
        assert!(sharpness_probe(&ev, 0.25, SharpTheorem::Additive, TOL).unwrap().is_none());
        assert!(sharpness_probe(&ev, 0.499, SharpTheorem::Quotient, TOL).unwrap().is_some());
        assert!(sharpness_probe(&ev, 0.5, SharpTheorem::Quotient, TOL).unwrap().is_none());
        assert!(sharpness_probe(&ev, 0.0, SharpTheorem::Quotient, TOL).is_err());
    }

    #[test]
    fn sharpness_on_weighted_complex_space() {
        let ev = TwoInnerEvaluator::new(crate::InnerSpace::new(FieldTag::Complex, vec![0.5, 3.0, 2.0, 1.5]).unwrap());
        assert!(sharpness_probe(&ev, 0.25 - 1e-4, SharpTheorem::Additive, TOL).unwrap().is_some());
        assert!(sharpness_probe(&ev, 0.25, SharpTheorem::Additive, TOL).unwrap().is_none());
        assert!(sharpness_probe(&ev, 0.5 - 1e-4, SharpTheorem::Quotient, TOL).unwrap().is_some());
        assert!(sharpness_probe(&ev, 0.5, SharpTheorem::Quotient, TOL).unwrap().is_none());
    }

    #[test]
    fn labels_round_trip() {
        for id in InequalityId::ALL {
            assert_eq!(InequalityId::from_label(id.label()), Some(id));
        }
        assert_eq!(SharpTheorem::from_label("thm2.2"), Some(SharpTheorem::Quotient));
    }
}
