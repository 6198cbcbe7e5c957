//! Holm step-down multiple-comparison adjustment.

use crate::error::StatsError;
use crate::scalar::Real;

/// Step-down Holm adjustment. Sort ascending, scale the i-th smallest by
/// (m − i), enforce monotonicity with a running maximum, cap at 1, and
/// return the adjusted values in the original input order.
pub fn holm_adjust<T: Real>(pvalues: &[T]) -> Result<Vec<T>, StatsError> {
    if pvalues.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    for &p in pvalues {
        let v = p.to_f64().unwrap_or(f64::NAN);
        if !(0.0..=1.0).contains(&v) {
            return Err(StatsError::InvalidProbability(v));
        }
    }
    let m = pvalues.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| pvalues[a].partial_cmp(&pvalues[b]).unwrap());

    let mut adjusted = vec![T::zero(); m];
    let mut running = T::zero();
    for (rank, &idx) in order.iter().enumerate() {
        let scaled = T::from_usize_(m - rank) * pvalues[idx];
        running = running.max(scaled).min(T::one());
        adjusted[idx] = running;
    }
    Ok(adjusted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hand_step_down() {
        let adj = holm_adjust(&[0.01f64, 0.02, 0.04]).unwrap();
        assert_abs_diff_eq!(adj[0], 0.03, epsilon = 1e-12);
        assert_abs_diff_eq!(adj[1], 0.04, epsilon = 1e-12);
        assert_abs_diff_eq!(adj[2], 0.04, epsilon = 1e-12);
    }

    #[test]
    fn single_p_unchanged() {
        let adj = holm_adjust(&[0.3f64]).unwrap();
        assert_eq!(adj, vec![0.3]);
    }

    #[test]
    fn caps_at_one() {
        let adj = holm_adjust(&[0.5f64, 0.6]).unwrap();
        assert_eq!(adj, vec![1.0, 1.0]);
    }

    #[test]
    fn returns_input_order() {
        let adj = holm_adjust(&[0.04f64, 0.01, 0.02]).unwrap();
        assert_abs_diff_eq!(adj[0], 0.04, epsilon = 1e-12);
        assert_abs_diff_eq!(adj[1], 0.03, epsilon = 1e-12);
        assert_abs_diff_eq!(adj[2], 0.04, epsilon = 1e-12);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(holm_adjust(&[0.5f64, 1.2]).is_err());
        assert!(holm_adjust(&[-0.1f64]).is_err());
        assert!(matches!(holm_adjust::<f64>(&[]), Err(StatsError::EmptyInput)));
    }
}
