//! Within-subject statistics engine for rated-system comparisons.
//!
//! Covers the full analysis chain for an n-raters-by-k-systems design:
//! Student-t confidence intervals, one-way repeated-measures ANOVA with
//! partial eta squared, Holm-adjusted paired t-tests, the Friedman test,
//! Wilcoxon signed-rank (exact and approximate), Fleiss' kappa, and the
//! chi-squared / t / F tail probabilities those tests need.
//!
//! All computations are generic over the scalar type (`f32` or `f64`) via
//! [`Real`]; the aliases below pin `f64` for ordinary use.

mod anova;
mod describe;
mod error;
mod fleiss;
mod friedman;
mod holm;
mod matrix;
mod scalar;
pub mod special;
mod ttest;
mod wilcoxon;

pub use anova::{partial_eta_sq_from_f, rm_anova, AnovaResult};
pub use describe::{mean, mean_ci, sample_sd, MeanCi};
pub use error::StatsError;
pub use fleiss::{fleiss_counts_from_matrix, fleiss_kappa, KappaResult};
pub use friedman::{friedman, friedman_with_options};
pub use holm::holm_adjust;
pub use matrix::RatingMatrix;
pub use scalar::Real;
pub use ttest::{paired_t, TestResult};
pub use wilcoxon::{wilcoxon_signed_rank, wilcoxon_signed_rank_with, WilcoxonMode, EXACT_LIMIT};

/// `f64` concretizations used by the rest of the toolkit.
pub type Matrix = RatingMatrix<f64>;
pub type Anova = AnovaResult<f64>;
pub type Test = TestResult<f64>;
pub type Kappa = KappaResult<f64>;
pub type Ci = MeanCi<f64>;
