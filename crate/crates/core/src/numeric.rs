//! Field-aware scalars and vectors, tolerance comparison and the seeded
//! generator shared by every other module.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalars are always carried as complex numbers; in real mode the
/// imaginary part is kept at exactly zero.
pub type Scalar = Complex64;

pub const ZERO: Scalar = Complex64::new(0.0, 0.0);
pub const ONE: Scalar = Complex64::new(1.0, 0.0);
pub const I: Scalar = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Real,
    Complex,
}

impl FieldTag {
    pub fn admits(self, s: Scalar) -> bool {
        match self {
            FieldTag::Real => s.im == 0.0,
            FieldTag::Complex => true,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Real => f.write_str("real"),
            FieldTag::Complex => f.write_str("complex"),
        }
    }
}

pub fn is_finite(s: Scalar) -> bool {
    s.re.is_finite() && s.im.is_finite()
}

pub(crate) fn check_finite(s: Scalar, what: &str) -> Result<()> {
    if is_finite(s) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{what} is not finite: {s}")))
    }
}

/// A vector of dimension at least two with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidDimension(format!(
                "vectors need dimension >= 2, got {}",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|s| !is_finite(**s)) {
            return Err(Error::InvalidInput(format!("non-finite vector entry {bad}")));
        }
        Ok(Self { entries })
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    /// The k-th standard basis vector (zero-based).
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidDimension(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut entries = vec![ZERO; dim];
        entries[k] = ONE;
        Self::new(entries)
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![ZERO; dim])
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|s| s.im == 0.0)
    }

    pub fn scale(&self, alpha: Scalar) -> Vector {
        Vector {
            entries: self.entries.iter().map(|&s| alpha * s).collect(),
        }
    }

    /// Unweighted Euclidean norm.
    pub fn euclidean_norm(&self) -> f64 {
        self.entries.iter().map(|s| s.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl Add for &Vector {
    type Output = Vector;

    /// Panics on a dimension mismatch.
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector {
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Vector {
    type Output = Vector;

    /// Panics on a dimension mismatch.
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector {
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&Vector> for Scalar {
    type Output = Vector;

    fn mul(self, rhs: &Vector) -> Vector {
        rhs.scale(self)
    }
}

/// Mixed absolute/relative tolerance: a residual `r` at magnitude `scale`
/// is accepted when `r <= abs + rel * scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance { abs: 1e-12, rel: 1e-9 };

    pub fn new(abs: f64, rel: f64) -> Result<Self> {
        if !(abs.is_finite() && rel.is_finite()) || abs < 0.0 || rel < 0.0 {
            return Err(Error::InvalidInput(format!(
                "tolerance components must be finite and nonnegative (abs={abs}, rel={rel})"
            )));
        }
        if abs == 0.0 && rel == 0.0 {
            return Err(Error::InvalidInput("tolerance abs and rel cannot both be zero".into()));
        }
        Ok(Self { abs, rel })
    }

    pub fn bound(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale.abs()
    }

    pub fn allows(&self, residual: f64, scale: f64) -> bool {
        residual <= self.bound(scale)
    }

    /// Residual expressed as a fraction of the allowed band; `<= 1` passes.
    pub fn ratio(&self, residual: f64, scale: f64) -> f64 {
        residual / self.bound(scale)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// `|a - b| <= tol.abs + tol.rel * max(|a|, |b|)`.
pub fn approx_equal(a: Scalar, b: Scalar, tol: Tolerance) -> Result<bool> {
    check_finite(a, "a")?;
    check_finite(b, "b")?;
    Ok((a - b).norm() <= tol.bound(a.norm().max(b.norm())))
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Counter-based SplitMix64 stream.
///
/// Output `k` (zero-based) of seed `s` is `mix(s + (k + 1) * GOLDEN_GAMMA)`
/// with the standard SplitMix64 finalizer, so any `(seed, counter)` state
/// can be reconstructed without replaying the prefix. Uniform reals take the
/// top 53 bits: `u = (x >> 11) * 2^-53` in `[0, 1)`, mapped to `2u - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeededGenerator {
    seed: u64,
    counter: u64,
}

impl SeededGenerator {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    pub fn at(seed: u64, counter: u64) -> Self {
        Self { seed, counter }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Independent per-trial generator with sub-seed `seed ^ index`.
    pub fn fork(&self, index: u64) -> SeededGenerator {
        SeededGenerator::new(self.seed ^ index)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        let mut z = self.seed.wrapping_add(self.counter.wrapping_mul(GOLDEN_GAMMA));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on `[0, 1)`.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[-1, 1)`.
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_unit() - 1.0
    }

    /// Uniform on `[lo, hi)`.
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_unit()
    }

    /// Real and imaginary parts independently uniform on `[-1, 1)`; the
    /// imaginary part is exactly zero (and draws nothing) in real mode.
    pub fn next_scalar(&mut self, field: FieldTag) -> Scalar {
        let re = self.next_symmetric();
        let im = match field {
            FieldTag::Real => 0.0,
            FieldTag::Complex => self.next_symmetric(),
        };
        Complex64::new(re, im)
    }
}

pub fn sample_vector(gen: &mut SeededGenerator, dim: usize, field: FieldTag) -> Result<Vector> {
    if dim < 2 {
        return Err(Error::InvalidDimension(format!(
            "sampled vectors need dimension >= 2, got {dim}"
        )));
    }
    Vector::new((0..dim).map(|_| gen.next_scalar(field)).collect())
}

/// Singular values, descending, of the matrix whose rows are `rows`.
pub fn singular_values(rows: &[&Vector]) -> Result<Vec<f64>> {
    let Some(first) = rows.first() else {
        return Ok(Vec::new());
    };
    let dim = first.dim();
    if let Some(bad) = rows.iter().find(|r| r.dim() != dim) {
        return Err(Error::dim_mismatch(dim, bad.dim()));
    }
    let m = DMatrix::from_fn(rows.len(), dim, |i, j| rows[i].entries()[j]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Number of singular values above `rel_threshold * sigma_max`.
pub fn numerical_rank(rows: &[&Vector], rel_threshold: f64) -> Result<usize> {
    let sv = singular_values(rows)?;
    let Some(&max) = sv.first() else { return Ok(0) };
    if max == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > rel_threshold * max).count())
}

/// Pairwise (cascade) summation; deterministic for a given slice order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}
