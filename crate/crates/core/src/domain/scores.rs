//! Rubric score sheets with hard range invariants.

use serde::{Deserialize, Serialize};

use super::DomainError;

/// Criterion labels for the four-item activity rubric, in rendering order.
pub const QM_CRITERION_KEYS: [&str; 4] = ["5.1C", "5.2C", "5.3C", "5.4C"];

/// Maximum score per criterion: 0-3 for the first three, 0-2 for the last.
pub const QM_CRITERION_MAX: [u8; 4] = [3, 3, 3, 2];

/// Validated score sheet for the four-criterion rubric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QmScores {
    c51: u8,
    c52: u8,
    c53: u8,
    c54: u8,
}

impl QmScores {
    pub fn new(c51: u8, c52: u8, c53: u8, c54: u8) -> Result<Self, DomainError> {
        for (key, (value, max)) in QM_CRITERION_KEYS
            .iter()
            .zip([c51, c52, c53, c54].into_iter().zip(QM_CRITERION_MAX))
        {
            if value > max {
                return Err(DomainError::ScoreOutOfRange {
                    criterion: key.to_string(),
                    value: value as i64,
                    max,
                });
            }
        }
        Ok(Self { c51, c52, c53, c54 })
    }

    pub fn values(&self) -> [u8; 4] {
        [self.c51, self.c52, self.c53, self.c54]
    }

    /// Total score, always within 0..=11.
    pub fn total(&self) -> u8 {
        self.c51 + self.c52 + self.c53 + self.c54
    }
}

/// Criterion labels for the 17-item learning-sciences rubric.
pub const ILS_CRITERION_KEYS: [&str; 17] = [
    "1.1", "1.2", "1.3", "1.4", "2.1", "2.2", "2.3", "3.1", "3.2", "3.3", "3.4", "4.1", "4.2",
    "4.3", "5.1", "5.2", "5.3",
];

/// Criteria per dimension: alignment, rigor, scaffolding, engagement,
/// inclusivity.
pub const ILS_DIMENSION_SIZES: [usize; 5] = [4, 3, 4, 3, 3];

/// Per-criterion maximum on the learning-sciences rubric.
pub const ILS_CRITERION_MAX: u8 = 4;

/// Validated 17-criterion score sheet, each criterion 0..=4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IlsScores {
    criteria: Vec<u8>,
}

impl IlsScores {
    pub fn new(criteria: Vec<u8>) -> Result<Self, DomainError> {
        if criteria.len() != ILS_CRITERION_KEYS.len() {
            return Err(DomainError::WrongCriterionCount {
                expected: ILS_CRITERION_KEYS.len(),
                got: criteria.len(),
            });
        }
        for (key, &value) in ILS_CRITERION_KEYS.iter().zip(&criteria) {
            if value > ILS_CRITERION_MAX {
                return Err(DomainError::ScoreOutOfRange {
                    criterion: key.to_string(),
                    value: value as i64,
                    max: ILS_CRITERION_MAX,
                });
            }
        }
        Ok(Self { criteria })
    }

    pub fn criteria(&self) -> &[u8] {
        &self.criteria
    }

    /// Sums over the (4, 3, 4, 3, 3) dimension groups, order preserved.
    pub fn dimension_sums(&self) -> [u8; 5] {
        let mut sums = [0u8; 5];
        let mut offset = 0;
        for (d, &size) in ILS_DIMENSION_SIZES.iter().enumerate() {
            sums[d] = self.criteria[offset..offset + size].iter().sum();
            offset += size;
        }
        sums
    }

    /// Total score, always within 0..=68.
    pub fn total(&self) -> u8 {
        self.criteria.iter().sum()
    }
}
