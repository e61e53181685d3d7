//! Numerical toolkit for 2-inner-product spaces.
//!
//! * [`space`]: weighted inner-product spaces, the induced 2-inner product
//!   `(x, y | z)` and 2-norm `|x|z|`, polarization and the CBS gap.
//! * [`axioms`]: sampled verification of the 2-inner-product axioms and
//!   2-norm conditions against any [`space::TwoInner`] evaluator.
//! * [`reverse`]: reverse Cauchy-Bunyakovsky-Schwarz bounds, their
//!   hypotheses, the underlying identities and the sharpness extremals.
//! * [`integral`]: the weighted 2-inner product on quadrature grids and the
//!   determinantal integral inequalities built from it.
//! * [`sweep`]: seeded, data-parallel randomized sweeps over all of the above.

pub mod axioms;
pub mod error;
pub mod integral;
pub mod numeric;
pub mod outcome;
pub mod par;
pub mod reverse;
pub mod space;
pub mod sweep;

pub use error::{Error, Result};
pub use numeric::{approx_equal, sample_vector, FieldTag, Scalar, SeededGenerator, Tolerance, Vector};
pub use par::Execution;
pub use space::{cbs_gap, inner, polarize, two_norm, InnerSpace, TwoInner, TwoInnerEvaluator};
