//! Scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign};

/// Real field type the engine is generic over.
///
/// Besides the usual float operations, each implementation pins the numeric
/// tolerances the algorithms use, so that `f32` runs are not held to
/// double-precision thresholds.
pub trait Real: Float + FloatConst + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static {
    /// Component-wise distance below which two amplitude vectors are merged.
    fn merge_tol() -> Self;
    /// Relative coefficient magnitude below which a term is dropped, and the
    /// absolute norm / probability floor for zero states.
    fn zero_tol() -> Self;
    /// Tolerance for amplitude classification and rank-one tests.
    fn factor_tol() -> Self;

    /// Lossless-enough conversion from an `f64` literal.
    #[inline]
    fn lit(v: f64) -> Self {
        <Self as num_traits::NumCast>::from(v).expect("representable literal")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn merge_tol() -> Self {
        1e-12
    }
    fn zero_tol() -> Self {
        1e-14
    }
    fn factor_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn merge_tol() -> Self {
        1e-5
    }
    fn zero_tol() -> Self {
        1e-7
    }
    fn factor_tol() -> Self {
        1e-4
    }
}
