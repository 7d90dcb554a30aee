//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};

/// Floating point scalar the chain model is evaluated in: `f32` or `f64`.
pub trait Real: Float + FloatConst + Debug + Display + Send + Sync + 'static {
    /// Converts an `f64` constant into the scalar type.
    fn lit(value: f64) -> Self;

    /// Lossy conversion used for diagnostics.
    fn as_f64(self) -> f64;
}

impl Real for f64 {
    #[inline]
    fn lit(value: f64) -> Self {
        value
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    #[inline]
    fn lit(value: f64) -> Self {
        value as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}
