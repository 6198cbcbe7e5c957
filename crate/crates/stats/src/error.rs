use thiserror::Error;

/// Errors surfaced by the statistics engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("empty input")]
    EmptyInput,

    #[error("inputs must have equal lengths (got {left} and {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("need at least {needed} observations, got {got}")]
    TooFewObservations { needed: usize, got: usize },

    #[error("degrees of freedom must be >= 1 (got {0})")]
    InvalidDf(usize),

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("rating matrix must be rectangular: row {row} has {got} cells, expected {expected}")]
    RaggedMatrix { row: usize, got: usize, expected: usize },

    #[error("rating matrix needs n >= 2 raters and k >= 2 systems (got n = {n}, k = {k})")]
    MatrixTooSmall { n: usize, k: usize },

    #[error("matrix cell ({row}, {col}) is not finite")]
    NonFiniteCell { row: usize, col: usize },

    #[error("error variance is zero; F statistic undefined")]
    ZeroErrorVariance,

    #[error("differences have zero variance with nonzero mean; t statistic undefined")]
    ZeroVariance,

    #[error("all paired differences are zero")]
    AllZeroDifferences,

    #[error("fleiss count row {row} sums to {got}, expected {expected} raters per item")]
    BadRaterCount { row: usize, got: usize, expected: usize },

    #[error("raters per item must be >= 2 (got {0})")]
    TooFewRaters(usize),

    #[error("series/continued fraction failed to converge within {0} iterations")]
    NoConvergence(usize),
}
