//! Floating-point scalar abstraction for the numeric side of the crate.
//!
//! Lattice data is exact (integers and [`Rational`](crate::Rational)); only
//! exponentiated phases and the transforms built from them are generic over
//! the float type.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// f32 or f64.
pub trait Scalar: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static {
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable as float")
    }

    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("f64 representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
