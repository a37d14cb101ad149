use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZneModel {
    Linear,
}

/// Zero-noise value from `(scale, value)` pairs: the intercept of the
/// least-squares line.
pub fn zne_extrapolate(points: &[(f64, f64)], model: ZneModel) -> Result<f64> {
    match model {
        ZneModel::Linear => {
            if points.len() < 2 {
                return Err(Error::Fit("linear extrapolation needs at least two points".into()));
            }
            let n = points.len() as f64;
            let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
            let my = points.iter().map(|p| p.1).sum::<f64>() / n;
            let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
            if sxx == 0.0 {
                return Err(Error::Fit("all noise scales are identical".into()));
            }
            let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
            Ok(my - sxy / sxx * mx)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn two_point_values() {
        assert_abs_diff_eq!(zne_extrapolate(&[(1.0, 0.25), (3.0, 0.25)], ZneModel::Linear).unwrap(), 0.25);
        assert_abs_diff_eq!(
            zne_extrapolate(&[(1.0, 1.1), (3.0, 1.3)], ZneModel::Linear).unwrap(),
            1.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn degenerate_scales() {
        assert!(zne_extrapolate(&[(1.0, 1.0), (1.0, 2.0)], ZneModel::Linear).is_err());
        assert!(zne_extrapolate(&[(1.0, 1.0)], ZneModel::Linear).is_err());
    }

    #[test]
    fn least_squares_with_three_points() {
        // y = 2 − 0.5x exactly.
        let pts = [(1.0, 1.5), (3.0, 0.5), (5.0, -0.5)];
        assert_abs_diff_eq!(zne_extrapolate(&pts, ZneModel::Linear).unwrap(), 2.0, epsilon = 1e-14);
    }
}
