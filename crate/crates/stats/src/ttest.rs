//! Paired Student t-test.

use serde::{Deserialize, Serialize};

use crate::error::StatsError;
use crate::scalar::Real;
use crate::special::t_sf;

/// Outcome of a hypothesis test: the statistic, its p-value, a method tag,
/// and whether the p-value came from an exact null distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult<T> {
    pub statistic: T,
    pub p: T,
    pub method: String,
    pub exact: bool,
    /// Set when the inputs were degenerate (for example every row constant)
    /// and the result is reported as a flagged no-effect outcome.
    #[serde(default)]
    pub degenerate: bool,
}

impl<T> TestResult<T> {
    pub(crate) fn new(statistic: T, p: T, method: &str, exact: bool) -> Self {
        Self { statistic, p, method: method.to_string(), exact, degenerate: false }
    }
}

/// Two-sided paired t-test: t = mean(d) / (s_d/√n) with df = n − 1.
pub fn paired_t<T: Real>(x: &[T], y: &[T]) -> Result<TestResult<T>, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch { left: x.len(), right: y.len() });
    }
    let n = x.len();
    if n < 2 {
        return Err(StatsError::TooFewObservations { needed: 2, got: n });
    }
    let nf = T::from_usize_(n);
    let diffs: Vec<T> = x.iter().zip(y).map(|(&a, &b)| a - b).collect();
    let mean = diffs.iter().copied().sum::<T>() / nf;
    let ss = diffs.iter().map(|&d| (d - mean) * (d - mean)).sum::<T>();

    if ss == T::zero() {
        if mean == T::zero() {
            // identical pairs: no difference at all
            return Ok(TestResult::new(T::zero(), T::one(), "paired-t", false));
        }
        return Err(StatsError::ZeroVariance);
    }

    let sd = (ss / T::from_usize_(n - 1)).sqrt();
    let t = mean / (sd / nf.sqrt());
    let p = (t_sf(t.abs(), n - 1)? * T::two()).min(T::one());
    Ok(TestResult::new(t, p, "paired-t", false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hand_computed_differences() {
        // d = (1,2,3): t = 2/(1/√3) = 2√3; closed df=2 tail ½(1−t/√(t²+2))
        let x = [2.0f64, 4.0, 6.0];
        let y = [1.0f64, 2.0, 3.0];
        let r = paired_t(&x, &y).unwrap();
        assert_abs_diff_eq!(r.statistic, 3.4641016151377544, epsilon = 1e-12);
        let expected_p = 1.0 - 3.4641016151377544 / 14.0f64.sqrt();
        assert_abs_diff_eq!(r.p, expected_p, epsilon = 1e-12);
        assert_abs_diff_eq!(r.p, 0.0742, epsilon = 5e-5);
    }

    #[test]
    fn identical_inputs_give_p_one() {
        let x = [1.0f64, 2.0, 3.0];
        let r = paired_t(&x, &x).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p, 1.0);
    }

    #[test]
    fn constant_nonzero_differences_fail() {
        let x = [2.0f64, 3.0, 4.0];
        let y = [1.0f64, 2.0, 3.0];
        assert!(matches!(paired_t(&x, &y), Err(StatsError::ZeroVariance)));
    }

    #[test]
    fn length_checks() {
        assert!(matches!(
            paired_t(&[1.0f64, 2.0], &[1.0]),
            Err(StatsError::LengthMismatch { .. })
        ));
        assert!(matches!(
            paired_t(&[1.0f64], &[2.0]),
            Err(StatsError::TooFewObservations { .. })
        ));
    }
}
