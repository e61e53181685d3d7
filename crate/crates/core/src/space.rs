//! Weighted inner-product spaces and the 2-inner product they induce.
//!
//! The induced 2-inner product is the 2x2 Gram determinant
//!
//! ```text
//! (x, y | z) = <x, y><z, z> - <x, z><z, y>,    <x, y> = sum_k w_k x_k conj(y_k)
//! ```
//!
//! linear in the first slot and conjugate-linear in the second. Everything
//! downstream talks to a [`TwoInner`] evaluator, so other constructions (the
//! quadrature double sum in [`crate::integral`], or deliberately corrupted
//! fixtures in tests) plug into the same suites.

use crate::error::{Error, Result};
use crate::numeric::{FieldTag, Scalar, Tolerance, Vector, I, ZERO};

/// A 2-inner product over a fixed dimension and field.
pub trait TwoInner: Sync {
    fn dim(&self) -> usize;

    fn field(&self) -> FieldTag;

    fn two_inner(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Scalar>;

    /// Norm of the underlying inner product. Only used to size rounding
    /// tolerances: `(x, y | z)` is computed with absolute error of order
    /// `eps * |x| |y| |z|^2`.
    fn magnitude(&self, x: &Vector) -> Result<f64>;
}

impl<T: TwoInner + ?Sized> TwoInner for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn field(&self) -> FieldTag {
        (**self).field()
    }
    fn two_inner(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Scalar> {
        (**self).two_inner(x, y, z)
    }
    fn magnitude(&self, x: &Vector) -> Result<f64> {
        (**self).magnitude(x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InnerSpace {
    field: FieldTag,
    weights: Vec<f64>,
}

impl InnerSpace {
    pub fn new(field: FieldTag, weights: Vec<f64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidDimension(format!(
                "space dimension must be >= 2, got {}",
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidInput(format!("weights must be positive and finite, got {w}")));
        }
        Ok(Self { field, weights })
    }

    pub fn unit(dim: usize, field: FieldTag) -> Result<Self> {
        Self::new(field, vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub(crate) fn check(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::dim_mismatch(self.dim(), v.dim()));
        }
        if self.field == FieldTag::Real && !v.is_real() {
            return Err(Error::InvalidInput("complex entries in a real space".into()));
        }
        Ok(())
    }

    fn inner_unchecked(&self, x: &Vector, y: &Vector) -> Scalar {
        let s = self
            .weights
            .iter()
            .zip(x.entries().iter().zip(y.entries()))
            .fold(ZERO, |acc, (&w, (a, b))| acc + a * b.conj() * w);
        self.discipline(s)
    }

    fn discipline(&self, s: Scalar) -> Scalar {
        match self.field {
            FieldTag::Real => Scalar::new(s.re, 0.0),
            FieldTag::Complex => s,
        }
    }
}

/// `<x, y> = sum_k w_k x_k conj(y_k)`.
pub fn inner(space: &InnerSpace, x: &Vector, y: &Vector) -> Result<Scalar> {
    space.check(x)?;
    space.check(y)?;
    Ok(space.inner_unchecked(x, y))
}

/// The 2-inner product induced by an [`InnerSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct TwoInnerEvaluator {
    space: InnerSpace,
}

impl TwoInnerEvaluator {
    pub fn new(space: InnerSpace) -> Self {
        Self { space }
    }

    pub fn unit(dim: usize, field: FieldTag) -> Result<Self> {
        Ok(Self::new(InnerSpace::unit(dim, field)?))
    }

    pub fn space(&self) -> &InnerSpace {
        &self.space
    }
}

impl TwoInner for TwoInnerEvaluator {
    fn dim(&self) -> usize {
        self.space.dim()
    }

    fn field(&self) -> FieldTag {
        self.space.field()
    }

    fn two_inner(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Scalar> {
        for v in [x, y, z] {
            self.space.check(v)?;
        }
        let s = &self.space;
        let value = s.inner_unchecked(x, y) * s.inner_unchecked(z, z)
            - s.inner_unchecked(x, z) * s.inner_unchecked(z, y);
        Ok(s.discipline(value))
    }

    fn magnitude(&self, x: &Vector) -> Result<f64> {
        self.space.check(x)?;
        Ok(self.space.inner_unchecked(x, x).re.max(0.0).sqrt())
    }
}

/// `|x| |y| |z|^2` in the evaluator's underlying norm.
pub fn triple_scale<E: TwoInner + ?Sized>(ev: &E, x: &Vector, y: &Vector, z: &Vector) -> Result<f64> {
    let nz = ev.magnitude(z)?;
    Ok(ev.magnitude(x)? * ev.magnitude(y)? * nz * nz)
}

/// `(x, x | z)` as a real number, clamped at zero inside the rounding band.
pub fn two_norm_sq<E: TwoInner + ?Sized>(ev: &E, x: &Vector, z: &Vector, tol: Tolerance) -> Result<f64> {
    let r = ev.two_inner(x, x, z)?.re;
    if r >= 0.0 {
        return Ok(r);
    }
    let scale = triple_scale(ev, x, x, z)?;
    if tol.allows(-r, scale) {
        Ok(0.0)
    } else {
        Err(Error::InternalConsistency(format!(
            "(x,x|z) = {r:e} is negative beyond tolerance"
        )))
    }
}

/// `|x|z| = sqrt((x, x | z))` with the default tolerance.
pub fn two_norm<E: TwoInner + ?Sized>(ev: &E, x: &Vector, z: &Vector) -> Result<f64> {
    two_norm_with(ev, x, z, Tolerance::DEFAULT)
}

pub fn two_norm_with<E: TwoInner + ?Sized>(ev: &E, x: &Vector, z: &Vector, tol: Tolerance) -> Result<f64> {
    Ok(two_norm_sq(ev, x, z, tol)?.sqrt())
}

/// `|x|z|^2 |y|z|^2 - |(x, y | z)|^2`, unclamped so callers can inspect the
/// sign of rounding noise.
pub fn cbs_gap<E: TwoInner + ?Sized>(ev: &E, x: &Vector, y: &Vector, z: &Vector) -> Result<f64> {
    let xx = ev.two_inner(x, x, z)?.re;
    let yy = ev.two_inner(y, y, z)?.re;
    let xy = ev.two_inner(x, y, z)?;
    Ok(xx * yy - xy.norm_sqr())
}

/// Recovers `(x, y | z)` from 2-norms alone:
/// `1/4 [(z,z|x+y) - (z,z|x-y)]`, plus `i/4 [(z,z|x+iy) - (z,z|x-iy)]` over
/// the complex field.
pub fn polarize<E: TwoInner + ?Sized>(ev: &E, x: &Vector, y: &Vector, z: &Vector) -> Result<Scalar> {
    let q = |v: &Vector| -> Result<f64> { Ok(ev.two_inner(z, z, v)?.re) };
    let real = 0.25 * (q(&(x + y))? - q(&(x - y))?);
    let imag = match ev.field() {
        FieldTag::Real => 0.0,
        FieldTag::Complex => {
            let iy = y.scale(I);
            0.25 * (q(&(x + &iy))? - q(&(x - &iy))?)
        }
    };
    Ok(Scalar::new(real, imag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ONE;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn real(v: f64) -> Scalar {
        Scalar::new(v, 0.0)
    }

    fn r3() -> TwoInnerEvaluator {
        TwoInnerEvaluator::unit(3, FieldTag::Real).unwrap()
    }

    fn c3() -> TwoInnerEvaluator {
        TwoInnerEvaluator::unit(3, FieldTag::Complex).unwrap()
    }

    fn e(k: usize) -> Vector {
        Vector::basis(3, k).unwrap()
    }

    fn v(xs: &[f64]) -> Vector {
        Vector::from_real(xs).unwrap()
    }

    fn e1_plus_i_e2() -> Vector {
        Vector::new(vec![ONE, I, ZERO]).unwrap()
    }

    #[test]
    fn inner_examples() {
        let s = InnerSpace::unit(3, FieldTag::Real).unwrap();
        assert_eq!(inner(&s, &e(0), &e(0)).unwrap(), ONE);
        assert_eq!(inner(&s, &e(0), &e(1)).unwrap(), ZERO);
        let w = InnerSpace::new(FieldTag::Real, vec![2.0, 1.0, 1.0]).unwrap();
        assert_eq!(inner(&w, &v(&[1.0, 2.0, 0.0]), &v(&[0.0, 1.0, 0.0])).unwrap(), real(2.0));
    }

    #[test]
    fn inner_dimension_mismatch() {
        let s = InnerSpace::unit(3, FieldTag::Real).unwrap();
        let err = inner(&s, &e(0), &Vector::basis(4, 0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::InvalidDimension(_)));
    }

    #[test]
    fn space_rejects_bad_weights() {
        assert!(InnerSpace::new(FieldTag::Real, vec![1.0, 0.0]).is_err());
        assert!(InnerSpace::new(FieldTag::Real, vec![1.0, -2.0]).is_err());
        assert!(InnerSpace::new(FieldTag::Real, vec![1.0]).is_err());
    }

    #[test]
    fn real_space_rejects_complex_vectors() {
        let err = r3().two_inner(&e1_plus_i_e2(), &e(0), &e(2)).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn two_inner_examples() {
        assert_eq!(r3().two_inner(&e(0), &e(1), &e(2)).unwrap(), ZERO);
        assert_eq!(r3().two_inner(&v(&[1.0, 2.0, 0.0]), &e(1), &e(2)).unwrap(), real(2.0));
        assert_eq!(c3().two_inner(&e1_plus_i_e2(), &e(0), &e(2)).unwrap(), ONE);
    }

    #[test]
    fn two_norm_examples() {
        let ev = r3();
        assert_eq!(two_norm(&ev, &e(0), &e(2)).unwrap(), 1.0);
        assert_relative_eq!(two_norm(&ev, &v(&[1.0, 2.0, 0.0]), &e(2)).unwrap(), 5f64.sqrt());
        assert_eq!(two_norm(&ev, &e(2), &e(2)).unwrap(), 0.0);
    }

    #[test]
    fn cbs_gap_examples() {
        let x = v(&[1.0, 2.0, 0.0]);
        assert_eq!(cbs_gap(&r3(), &x, &x, &e(2)).unwrap(), 0.0);
        assert_eq!(cbs_gap(&r3(), &x, &e(1), &e(2)).unwrap(), 1.0);
        assert_eq!(cbs_gap(&c3(), &e1_plus_i_e2(), &e(0), &e(2)).unwrap(), 1.0);
    }

    #[test]
    fn polarize_examples() {
        let x = v(&[1.0, 2.0, 0.0]);
        assert_relative_eq!(polarize(&r3(), &x, &e(1), &e(2)).unwrap().re, 2.0);
        let p = polarize(&r3(), &x, &x, &e(2)).unwrap();
        assert_relative_eq!(p.re, two_norm(&r3(), &x, &e(2)).unwrap().powi(2), epsilon = 1e-12);
        let pc = polarize(&c3(), &e1_plus_i_e2(), &e(0), &e(2)).unwrap();
        assert_relative_eq!(pc.re, 1.0, epsilon = 1e-15);
        assert_relative_eq!(pc.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn zero_third_slot_vanishes_exactly() {
        let z = Vector::zeros(3).unwrap();
        let x = Vector::new(vec![Complex64::new(0.3, -0.2), I, ONE]).unwrap();
        assert_eq!(c3().two_inner(&x, &e1_plus_i_e2(), &z).unwrap(), ZERO);
    }

    #[test]
    fn weighted_space_scales_two_inner() {
        let ev = TwoInnerEvaluator::new(InnerSpace::new(FieldTag::Real, vec![2.0, 1.0, 1.0]).unwrap());
        // <x,y>=2, <z,z>=1, <x,z>=0
        assert_eq!(ev.two_inner(&v(&[1.0, 2.0, 0.0]), &e(1), &e(2)).unwrap(), real(2.0));
        assert_relative_eq!(ev.magnitude(&v(&[1.0, 0.0, 0.0])).unwrap(), 2f64.sqrt());
    }
}
