//! Fleiss' kappa: chance-corrected agreement for many raters assigning
//! categories to items.

use serde::{Deserialize, Serialize};

use crate::error::StatsError;
use crate::matrix::RatingMatrix;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaResult<T> {
    pub kappa: T,
    pub observed_agreement: T,
    pub expected_agreement: T,
    /// Chance agreement hit 1 (every rating in one category); kappa is
    /// reported as 1 but carries no information.
    pub degenerate: bool,
}

/// Fleiss' kappa from an items-by-categories count grid. Every row must sum
/// to `raters_per_item`.
pub fn fleiss_kappa<T: Real>(
    counts: &[Vec<usize>],
    raters_per_item: usize,
) -> Result<KappaResult<T>, StatsError> {
    if counts.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    if raters_per_item < 2 {
        return Err(StatsError::TooFewRaters(raters_per_item));
    }
    let n_items = counts.len();
    let n_categories = counts[0].len();
    for (i, row) in counts.iter().enumerate() {
        if row.len() != n_categories {
            return Err(StatsError::RaggedMatrix {
                row: i,
                got: row.len(),
                expected: n_categories,
            });
        }
        let sum: usize = row.iter().sum();
        if sum != raters_per_item {
            return Err(StatsError::BadRaterCount { row: i, got: sum, expected: raters_per_item });
        }
    }

    let r = T::from_usize_(raters_per_item);
    let n = T::from_usize_(n_items);

    // per-item agreement P_i = (Σ n_ij² − r) / (r(r−1))
    let mut p_bar = T::zero();
    for row in counts {
        let sq: T = row.iter().map(|&c| T::from_usize_(c * c)).sum();
        p_bar = p_bar + (sq - r) / (r * (r - T::one()));
    }
    p_bar = p_bar / n;

    // category marginals p_j = Σ_i n_ij / (N r)
    let mut expected = T::zero();
    for j in 0..n_categories {
        let col: usize = counts.iter().map(|row| row[j]).sum();
        let pj = T::from_usize_(col) / (n * r);
        expected = expected + pj * pj;
    }

    if T::one() - expected <= T::zero() {
        return Ok(KappaResult {
            kappa: T::one(),
            observed_agreement: p_bar,
            expected_agreement: expected,
            degenerate: true,
        });
    }

    Ok(KappaResult {
        kappa: (p_bar - expected) / (T::one() - expected),
        observed_agreement: p_bar,
        expected_agreement: expected,
        degenerate: false,
    })
}

/// Bin a rating matrix into Fleiss counts: items are the matrix columns
/// (one row of counts per system), categories are the distinct observed
/// values in ascending order.
pub fn fleiss_counts_from_matrix<T: Real>(matrix: &RatingMatrix<T>) -> Vec<Vec<usize>> {
    let mut levels: Vec<T> = matrix
        .rows()
        .iter()
        .flat_map(|r| r.iter().copied())
        .collect();
    levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
    levels.dedup();

    (0..matrix.n_systems())
        .map(|j| {
            let mut row = vec![0usize; levels.len()];
            for v in matrix.column(j) {
                let idx = levels.iter().position(|&l| l == v).unwrap();
                row[idx] += 1;
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hand_computed_two_by_two() {
        // item 1 both raters pick A, item 2 split: P̄ = ½, P̄e = ⅝, κ = −⅓
        let counts = vec![vec![2, 0], vec![1, 1]];
        let r: KappaResult<f64> = fleiss_kappa(&counts, 2).unwrap();
        assert_abs_diff_eq!(r.observed_agreement, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.expected_agreement, 0.625, epsilon = 1e-12);
        assert_abs_diff_eq!(r.kappa, -1.0 / 3.0, epsilon = 1e-9);
        assert!(!r.degenerate);
    }

    #[test]
    fn perfect_single_category_is_degenerate() {
        let counts = vec![vec![3, 0], vec![3, 0], vec![3, 0]];
        let r: KappaResult<f64> = fleiss_kappa(&counts, 3).unwrap();
        assert_eq!(r.kappa, 1.0);
        assert!(r.degenerate);
    }

    #[test]
    fn perfect_agreement_across_categories() {
        // unanimous per item but items differ: κ = 1, not degenerate
        let counts = vec![vec![4, 0], vec![0, 4]];
        let r: KappaResult<f64> = fleiss_kappa(&counts, 4).unwrap();
        assert_abs_diff_eq!(r.kappa, 1.0, epsilon = 1e-12);
        assert!(!r.degenerate);
    }

    #[test]
    fn invariant_under_category_permutation() {
        let counts = vec![vec![3, 1, 0], vec![1, 2, 1], vec![0, 0, 4]];
        let permuted = vec![vec![0, 1, 3], vec![1, 2, 1], vec![4, 0, 0]];
        let a: KappaResult<f64> = fleiss_kappa(&counts, 4).unwrap();
        let b: KappaResult<f64> = fleiss_kappa(&permuted, 4).unwrap();
        assert_abs_diff_eq!(a.kappa, b.kappa, epsilon = 1e-12);
    }

    #[test]
    fn row_sum_validation() {
        let counts = vec![vec![2, 0], vec![2, 1]];
        assert!(matches!(
            fleiss_kappa::<f64>(&counts, 2),
            Err(StatsError::BadRaterCount { row: 1, got: 3, expected: 2 })
        ));
        assert!(matches!(
            fleiss_kappa::<f64>(&counts, 1),
            Err(StatsError::TooFewRaters(1))
        ));
    }

    #[test]
    fn counts_from_matrix_columns() {
        let m = RatingMatrix::from_rows(vec![
            vec![1.0, 2.0, 2.0],
            vec![1.0, 2.0, 3.0],
        ])
        .unwrap();
        // levels 1, 2, 3; items are the three columns
        let counts = fleiss_counts_from_matrix(&m);
        assert_eq!(counts, vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 1, 1]]);
    }
}
