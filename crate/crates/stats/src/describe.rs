//! Descriptive statistics and the Student-t confidence interval.

use serde::{Deserialize, Serialize};

use crate::error::StatsError;
use crate::scalar::Real;
use crate::special::t_quantile;

pub fn mean<T: Real>(values: &[T]) -> T {
    values.iter().copied().sum::<T>() / T::from_usize_(values.len())
}

/// Sample standard deviation (n − 1 denominator). Zero for n = 1.
pub fn sample_sd<T: Real>(values: &[T]) -> T {
    let n = values.len();
    if n < 2 {
        return T::zero();
    }
    let m = mean(values);
    let ss = values.iter().map(|&v| (v - m) * (v - m)).sum::<T>();
    (ss / T::from_usize_(n - 1)).sqrt()
}

/// Mean with a two-sided Student-t confidence interval: x̄ ± t(α/2, n−1)·s/√n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanCi<T> {
    pub mean: T,
    pub lower: T,
    pub upper: T,
    /// True when n = 1 and the interval collapses to the point estimate.
    pub degenerate: bool,
}

pub fn mean_ci<T: Real>(values: &[T], alpha: T) -> Result<MeanCi<T>, StatsError> {
    if values.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    let a = alpha.to_f64().unwrap_or(f64::NAN);
    if !(0.0..1.0).contains(&a) || a == 0.0 {
        return Err(StatsError::InvalidProbability(a));
    }
    let m = mean(values);
    let n = values.len();
    if n == 1 {
        return Ok(MeanCi { mean: m, lower: m, upper: m, degenerate: true });
    }
    let s = sample_sd(values);
    let t = t_quantile(alpha * T::half(), n - 1)?;
    let margin = t * s / T::from_usize_(n).sqrt();
    Ok(MeanCi { mean: m, lower: m - margin, upper: m + margin, degenerate: false })
}
