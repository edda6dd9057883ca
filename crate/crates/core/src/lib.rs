//! Counting abelian number fields by discriminant with explicit error terms.
//!
//! The crate builds the Dirichlet series counting `C_n`-etale algebras, checks
//! it against direct field enumeration, evaluates the L-functions and moments
//! that control its analytic continuation, and turns those bounds into
//! explicit Tauberian error terms.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod arith;
pub mod constants;
pub mod error;
pub mod fields;
pub mod lfunctions;
pub mod moments;
pub mod scalar;
pub mod series;
pub mod tauberian;

pub use error::{Error, Result};
pub use scalar::{OrderedField, Real};

/// Default real scalar.
pub type Scalar = f64;
/// Default complex scalar.
pub type Complex64 = num_complex::Complex<Scalar>;
/// Exact scalar for the smoothing identities.
pub type Rational = num_rational::BigRational;
/// L-function value with its error bound at the default precision.
pub type Evaluation64 = lfunctions::Evaluation<Scalar>;
/// Riesz-mean sandwich in exact arithmetic.
pub type ExactSandwich = tauberian::Sandwich<Rational>;
