//! One-way repeated-measures ANOVA (within-subject factor).

use serde::{Deserialize, Serialize};

use crate::error::StatsError;
use crate::matrix::RatingMatrix;
use crate::scalar::Real;
use crate::special::f_sf;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnovaResult<T> {
    pub f: T,
    pub df_effect: usize,
    pub df_error: usize,
    pub p: T,
    pub partial_eta_sq: T,
    pub ss_effect: T,
    pub ss_subject: T,
    pub ss_error: T,
}

/// Decompose SS_total = SS_effect + SS_subject + SS_error and test the
/// within-subject factor with F = MS_effect / MS_error.
pub fn rm_anova<T: Real>(matrix: &RatingMatrix<T>) -> Result<AnovaResult<T>, StatsError> {
    let n = matrix.n_raters();
    let k = matrix.n_systems();
    let nf = T::from_usize_(n);
    let kf = T::from_usize_(k);

    let grand = matrix
        .rows()
        .iter()
        .flat_map(|r| r.iter().copied())
        .sum::<T>()
        / (nf * kf);

    let mut ss_subject = T::zero();
    for row in matrix.rows() {
        let rm = row.iter().copied().sum::<T>() / kf;
        ss_subject = ss_subject + (rm - grand) * (rm - grand);
    }
    ss_subject = ss_subject * kf;

    let mut ss_effect = T::zero();
    for j in 0..k {
        let cm = matrix.column(j).iter().copied().sum::<T>() / nf;
        ss_effect = ss_effect + (cm - grand) * (cm - grand);
    }
    ss_effect = ss_effect * nf;

    let ss_total = matrix
        .rows()
        .iter()
        .flat_map(|r| r.iter().copied())
        .map(|v| (v - grand) * (v - grand))
        .sum::<T>();

    let ss_error = (ss_total - ss_subject - ss_effect).max(T::zero());

    let df_effect = k - 1;
    let df_error = (n - 1) * (k - 1);
    // An error SS at rounding-noise level relative to the total is treated
    // as zero: F would be meaningless, not infinite.
    if ss_error <= ss_total * T::from_f64(1e-12).unwrap() {
        return Err(StatsError::ZeroErrorVariance);
    }
    let ms_error = ss_error / T::from_usize_(df_error);
    let ms_effect = ss_effect / T::from_usize_(df_effect);
    let f = ms_effect / ms_error;
    let p = f_sf(f, df_effect, df_error)?;
    let partial_eta_sq = ss_effect / (ss_effect + ss_error);

    Ok(AnovaResult {
        f,
        df_effect,
        df_error,
        p,
        partial_eta_sq,
        ss_effect,
        ss_subject,
        ss_error,
    })
}

/// Algebraic identity η_p² = F·df₁ / (F·df₁ + df₂), usable when only the
/// F ratio and degrees of freedom were reported.
pub fn partial_eta_sq_from_f<T: Real>(f: T, df_effect: usize, df_error: usize) -> T {
    let num = f * T::from_usize_(df_effect);
    num / (num + T::from_usize_(df_error))
}
