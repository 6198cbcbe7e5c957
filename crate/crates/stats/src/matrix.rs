use serde::{Deserialize, Serialize};

use crate::error::StatsError;
use crate::scalar::Real;

/// Complete within-subject rating grid: n raters (rows) by k systems
/// (columns), no missing cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatingMatrix<T> {
    raters: Vec<String>,
    systems: Vec<String>,
    values: Vec<Vec<T>>,
}

impl<T: Real> RatingMatrix<T> {
    /// Build a validated matrix. Requires n >= 2, k >= 2, rectangular rows,
    /// and finite cells.
    pub fn new(
        raters: Vec<String>,
        systems: Vec<String>,
        values: Vec<Vec<T>>,
    ) -> Result<Self, StatsError> {
        let n = raters.len();
        let k = systems.len();
        if n < 2 || k < 2 {
            return Err(StatsError::MatrixTooSmall { n, k });
        }
        if values.len() != n {
            return Err(StatsError::RaggedMatrix {
                row: values.len(),
                got: values.len(),
                expected: n,
            });
        }
        for (i, row) in values.iter().enumerate() {
            if row.len() != k {
                return Err(StatsError::RaggedMatrix {
                    row: i,
                    got: row.len(),
                    expected: k,
                });
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(StatsError::NonFiniteCell { row: i, col: j });
                }
            }
        }
        Ok(Self { raters, systems, values })
    }

    /// Convenience constructor with generated labels `r1..rn` / `s1..sk`.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, StatsError> {
        let n = rows.len();
        let k = rows.first().map(Vec::len).unwrap_or(0);
        let raters = (1..=n).map(|i| format!("r{i}")).collect();
        let systems = (1..=k).map(|j| format!("s{j}")).collect();
        Self::new(raters, systems, rows)
    }

    pub fn n_raters(&self) -> usize {
        self.raters.len()
    }

    pub fn n_systems(&self) -> usize {
        self.systems.len()
    }

    pub fn raters(&self) -> &[String] {
        &self.raters
    }

    pub fn systems(&self) -> &[String] {
        &self.systems
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.values[i]
    }

    /// Column j as an owned vector (one value per rater).
    pub fn column(&self, j: usize) -> Vec<T> {
        self.values.iter().map(|row| row[j]).collect()
    }
}
