//! Floating-point abstraction shared by the state engine and the analysis code.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar type used for amplitude components and probabilities.
///
/// Implemented for `f32` and `f64`. The tolerance hooks scale the invariant
/// checks to the precision of the type.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Tolerance for normalization and probability-sum invariants.
    fn invariant_tol() -> Self;
    /// Maximum deviation from unit norm accepted for caller-supplied states.
    fn input_tol() -> Self;
    /// Norms and probabilities below this are treated as zero.
    fn zero_tol() -> Self;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn invariant_tol() -> Self {
        1e-10
    }
    fn input_tol() -> Self {
        1e-8
    }
    fn zero_tol() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn invariant_tol() -> Self {
        1e-5
    }
    fn input_tol() -> Self {
        1e-5
    }
    fn zero_tol() -> Self {
        1e-10
    }
}
