use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the engine is generic over: `f32` or `f64`.
///
/// Every statistic in this crate is defined for any `Real`; the crate root
/// exposes `f64` aliases for the common case.
pub trait Real: Float + FromPrimitive + ToPrimitive + Debug + Display + Sum + 'static {
    /// Convergence tolerance for series and continued fractions: the
    /// documented 1e-14 term ratio, widened to machine epsilon for
    /// narrower scalars.
    fn tolerance() -> Self {
        let documented = Self::from_f64(1e-14).unwrap_or_else(Self::epsilon);
        documented.max(Self::epsilon())
    }

    fn from_usize_(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as scalar")
    }

    fn half() -> Self {
        Self::from_f64(0.5).unwrap()
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl<T> Real for T where T: Float + FromPrimitive + ToPrimitive + Debug + Display + Sum + 'static {}
