//! Scalar abstractions shared by the numeric and exact code paths.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Floating-point scalar used by the analytic routines.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 is representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Ordered field used where exact arithmetic is required.
pub trait OrderedField: Num + Clone + PartialOrd + Debug {
    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

impl OrderedField for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }
}

impl OrderedField for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl OrderedField for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}
