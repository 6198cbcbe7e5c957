//! Friedman rank test for complete within-subject designs.

use crate::error::StatsError;
use crate::matrix::RatingMatrix;
use crate::scalar::Real;
use crate::special::chi2_sf;
use crate::ttest::TestResult;

/// Mid-ranks of one row: ties receive the average of the ranks they span.
pub(crate) fn mid_ranks<T: Real>(row: &[T]) -> Vec<T> {
    let k = row.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| row[a].partial_cmp(&row[b]).unwrap());
    let mut ranks = vec![T::zero(); k];
    let mut i = 0;
    while i < k {
        let mut j = i;
        while j + 1 < k && row[order[j + 1]] == row[order[i]] {
            j += 1;
        }
        // positions i..=j (0-based) share the average 1-based rank
        let avg = T::from_usize_(i + 1 + j + 1) * T::half();
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Friedman test with mid-ranks and the standard tie-correction divisor
/// 1 − ΣT/(nk(k²−1)), where T sums t³ − t over tie groups.
pub fn friedman<T: Real>(matrix: &RatingMatrix<T>) -> Result<TestResult<T>, StatsError> {
    friedman_with_options(matrix, true)
}

/// Friedman test with the tie correction optionally disabled, which
/// reproduces the plain 12/(nk(k+1))·ΣR_j² − 3n(k+1) statistic even in the
/// presence of ties.
pub fn friedman_with_options<T: Real>(
    matrix: &RatingMatrix<T>,
    tie_correction: bool,
) -> Result<TestResult<T>, StatsError> {
    let n = matrix.n_raters();
    let k = matrix.n_systems();
    let nf = T::from_usize_(n);
    let kf = T::from_usize_(k);

    let mut rank_sums = vec![T::zero(); k];
    let mut tie_term = T::zero();
    for row in matrix.rows() {
        let ranks = mid_ranks(row);
        for (j, r) in ranks.iter().enumerate() {
            rank_sums[j] = rank_sums[j] + *r;
        }
        // accumulate t³ − t over this row's tie groups
        let mut sorted: Vec<T> = row.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut i = 0;
        while i < k {
            let mut j = i;
            while j + 1 < k && sorted[j + 1] == sorted[i] {
                j += 1;
            }
            let t = T::from_usize_(j - i + 1);
            tie_term = tie_term + (t * t * t - t);
            i = j + 1;
        }
    }

    let sum_r_sq = rank_sums.iter().map(|&r| r * r).sum::<T>();
    let twelve = T::from_f64(12.0).unwrap();
    let three = T::from_f64(3.0).unwrap();
    let uncorrected =
        twelve / (nf * kf * (kf + T::one())) * sum_r_sq - three * nf * (kf + T::one());

    let statistic = if tie_correction {
        let divisor = T::one() - tie_term / (nf * kf * (kf * kf - T::one()));
        if divisor <= T::zero() {
            // every rater gave one constant row: no ranking information
            let mut r = TestResult::new(T::zero(), T::one(), "friedman", false);
            r.degenerate = true;
            return Ok(r);
        }
        uncorrected / divisor
    } else {
        uncorrected
    };
    let statistic = statistic.max(T::zero());

    let p = chi2_sf(statistic, k - 1)?;
    Ok(TestResult::new(statistic, p, "friedman", false))
}
