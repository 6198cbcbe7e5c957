//! Wilcoxon signed-rank test: exact null distribution for small samples,
//! tie- and continuity-corrected normal approximation for large ones.

use crate::error::StatsError;
use crate::friedman::mid_ranks;
use crate::scalar::Real;
use crate::special::normal_sf;
use crate::ttest::TestResult;

/// Largest n for which the exact 2ⁿ sign-assignment distribution is used.
pub const EXACT_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WilcoxonMode {
    /// Exact for n <= [`EXACT_LIMIT`], normal approximation above.
    Auto,
    Exact,
    NormalApprox,
}

/// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences
/// are dropped before ranking.
pub fn wilcoxon_signed_rank<T: Real>(x: &[T], y: &[T]) -> Result<TestResult<T>, StatsError> {
    wilcoxon_signed_rank_with(x, y, WilcoxonMode::Auto)
}

pub fn wilcoxon_signed_rank_with<T: Real>(
    x: &[T],
    y: &[T],
    mode: WilcoxonMode,
) -> Result<TestResult<T>, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch { left: x.len(), right: y.len() });
    }
    let diffs: Vec<T> = x
        .iter()
        .zip(y)
        .map(|(&a, &b)| a - b)
        .filter(|d| *d != T::zero())
        .collect();
    let n = diffs.len();
    if n == 0 {
        return Err(StatsError::AllZeroDifferences);
    }

    let magnitudes: Vec<T> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = mid_ranks(&magnitudes);
    let w_plus: T = ranks
        .iter()
        .zip(&diffs)
        .filter(|(_, d)| **d > T::zero())
        .map(|(r, _)| *r)
        .sum();

    let exact = match mode {
        WilcoxonMode::Auto => n <= EXACT_LIMIT,
        WilcoxonMode::Exact => true,
        WilcoxonMode::NormalApprox => false,
    };

    let p = if exact {
        exact_two_sided(&ranks, w_plus)
    } else {
        normal_two_sided(&magnitudes, w_plus)
    };

    let mut result = TestResult::new(w_plus, p, "wilcoxon-signed-rank", exact);
    result.p = result.p.min(T::one());
    Ok(result)
}

/// Exact two-sided p over all 2ⁿ sign assignments, conditional on the
/// observed (mid-)ranks: P(|T − μ| >= |w − μ|).
///
/// Mid-ranks are integers or half-integers, so doubling makes everything
/// exact integer arithmetic; the distribution is tabulated by convolution.
fn exact_two_sided<T: Real>(ranks: &[T], w_plus: T) -> T {
    let n = ranks.len();
    let doubled: Vec<usize> = ranks
        .iter()
        .map(|r| (*r * T::two()).round().to_usize().expect("rank fits usize"))
        .collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0u64; total + 1];
    counts[0] = 1;
    for &dr in &doubled {
        for s in (0..=total - dr).rev() {
            if counts[s] > 0 {
                counts[s + dr] += counts[s];
            }
        }
    }

    // all quantities in doubled units; μ2 = total/2 may be half-integer, so
    // compare 2|s − μ2| = |2s − total| as plain integers
    let w2 = (w_plus * T::two()).round().to_i64().expect("statistic fits i64") * 2;
    let dev_obs = (w2 - total as i64).unsigned_abs();
    let mut tail = 0u64;
    for (s, &c) in counts.iter().enumerate() {
        let dev = (2 * s as i64 - total as i64).unsigned_abs();
        if dev >= dev_obs {
            tail += c;
        }
    }
    T::from_u64(tail).unwrap() / T::from_f64((n as f64).exp2()).unwrap()
}

/// Normal approximation with tie correction and a 0.5 continuity correction
/// toward the mean.
fn normal_two_sided<T: Real>(magnitudes: &[T], w_plus: T) -> T {
    let n = magnitudes.len();
    let nf = T::from_usize_(n);
    let mean = nf * (nf + T::one()) / T::from_f64(4.0).unwrap();

    // Σ(t³ − t) over tie groups of |d|
    let mut sorted = magnitudes.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut tie_term = T::zero();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = T::from_usize_(j - i + 1);
        tie_term = tie_term + (t * t * t - t);
        i = j + 1;
    }

    let var = nf * (nf + T::one()) * (T::two() * nf + T::one()) / T::from_f64(24.0).unwrap()
        - tie_term / T::from_f64(48.0).unwrap();
    if var <= T::zero() {
        return T::one();
    }
    let dev = (w_plus - mean).abs();
    let z = (dev - T::half()).max(T::zero()) / var.sqrt();
    (normal_sf(z) * T::two()).min(T::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Full 2ⁿ enumeration, the independent oracle for the convolution path.
    fn enumerate_two_sided(ranks: &[f64], w_plus: f64) -> f64 {
        let n = ranks.len();
        let total: f64 = ranks.iter().sum();
        let mu = total / 2.0;
        let dev_obs = (w_plus - mu).abs();
        let mut hits = 0u64;
        for mask in 0u64..(1 << n) {
            let t: f64 = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| ranks[i])
                .sum();
            if (t - mu).abs() >= dev_obs - 1e-12 {
                hits += 1;
            }
        }
        hits as f64 / (1u64 << n) as f64
    }

    #[test]
    fn three_positive_distinct_differences() {
        // W+ = 6 out of ranks {1,2,3}; only assignments 0 and 6 deviate as far
        let x = [2.0f64, 4.0, 7.0];
        let y = [1.0f64, 2.0, 3.0];
        let r = wilcoxon_signed_rank(&x, &y).unwrap();
        assert_eq!(r.statistic, 6.0);
        assert_eq!(r.p, 0.25);
        assert!(r.exact);
    }

    #[test]
    fn antisymmetric_in_argument_order() {
        let x = [5.0f64, 3.0, 8.0, 1.0, 9.0];
        let y = [4.0f64, 6.0, 2.0, 1.5, 9.5];
        let a = wilcoxon_signed_rank(&x, &y).unwrap();
        let b = wilcoxon_signed_rank(&y, &x).unwrap();
        assert_abs_diff_eq!(a.p, b.p, epsilon = 1e-12);
    }

    #[test]
    fn all_zero_differences_error() {
        let x = [1.0f64, 2.0, 3.0];
        assert!(matches!(
            wilcoxon_signed_rank(&x, &x),
            Err(StatsError::AllZeroDifferences)
        ));
    }

    #[test]
    fn zeros_dropped_before_ranking() {
        // one zero difference leaves n = 2
        let x = [1.0f64, 5.0, 9.0];
        let y = [1.0f64, 3.0, 4.0];
        let r = wilcoxon_signed_rank(&x, &y).unwrap();
        assert_eq!(r.statistic, 3.0); // ranks 1 + 2, both positive
    }

    #[test]
    fn matches_full_enumeration_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(2..=12);
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0..8) as f64).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.gen_range(0..8) as f64).collect();
            let Ok(r) = wilcoxon_signed_rank(&x, &y) else {
                continue; // all-zero differences: nothing to compare
            };
            let diffs: Vec<f64> = x
                .iter()
                .zip(&y)
                .map(|(a, b)| a - b)
                .filter(|d| *d != 0.0)
                .collect();
            let mags: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
            let ranks = mid_ranks(&mags);
            let w: f64 = ranks
                .iter()
                .zip(&diffs)
                .filter(|(_, d)| **d > 0.0)
                .map(|(r, _)| *r)
                .sum();
            let oracle = enumerate_two_sided(&ranks, w);
            assert_abs_diff_eq!(r.p, oracle, epsilon = 1e-12);
        }
    }

    #[test]
    fn exact_and_normal_agree_at_moderate_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let x: Vec<f64> = (0..15).map(|_| rng.gen_range(0.0..10.0)).collect();
            let y: Vec<f64> = (0..15).map(|_| rng.gen_range(0.0..10.0)).collect();
            let exact = wilcoxon_signed_rank_with(&x, &y, WilcoxonMode::Exact).unwrap();
            let approx = wilcoxon_signed_rank_with(&x, &y, WilcoxonMode::NormalApprox).unwrap();
            assert!(
                (exact.p - approx.p).abs() < 0.02,
                "exact {} vs normal {}",
                exact.p,
                approx.p
            );
        }
    }
}
