//! Observed order of convergence from errors at a sequence of resolutions.

use serde::{Deserialize, Serialize};

/// Relative errors at or below this are treated as round-off.
pub const ROUNDOFF_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceFit {
    /// Least-squares slope of −log(err) against log(n), over errors above the floor.
    pub order: Option<f64>,
    /// Some error reached the round-off floor.
    pub reached_floor: bool,
}

impl ConvergenceFit {
    /// Order at least `min_order`, or errors that hit the floor before two
    /// points above it could be fitted.
    pub fn passes(&self, min_order: f64) -> bool {
        match self.order {
            Some(q) => q >= min_order,
            None => self.reached_floor,
        }
    }
}

/// Fits err ≈ C·n^{−q}. `n` and `errors` must have equal length.
pub fn fit_order(n: &[f64], errors: &[f64]) -> ConvergenceFit {
    assert_eq!(n.len(), errors.len(), "resolution and error lists differ in length");
    let pts: Vec<(f64, f64)> =
        n.iter().zip(errors).filter(|&(_, &e)| e > ROUNDOFF_FLOOR).map(|(&n, &e)| (n.ln(), e.ln())).collect();
    let reached_floor = errors.iter().any(|&e| e <= ROUNDOFF_FLOOR);
    if pts.len() < 2 {
        return ConvergenceFit { order: None, reached_floor };
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let sxy: f64 = pts.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    ConvergenceFit { order: Some(-sxy / sxx), reached_floor }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_power_law() {
        let n = [32.0, 64.0, 128.0, 256.0];
        let e: Vec<f64> = n.iter().map(|&n: &f64| 3.0 * n.powf(-2.0)).collect();
        let fit = fit_order(&n, &e);
        assert!((fit.order.unwrap() - 2.0).abs() < 1e-12);
        assert!(fit.passes(1.9));
    }

    #[test]
    fn floor_is_ignored() {
        let fit = fit_order(&[32.0, 64.0, 128.0], &[1e-6, 1e-15, 0.0]);
        assert_eq!(fit.order, None);
        assert!(fit.reached_floor && fit.passes(1.9));
        let fit = fit_order(&[32.0, 64.0], &[1e-3, 1e-3]);
        assert!(!fit.passes(1.9));
        assert!(!fit_order(&[32.0], &[1e-3]).passes(1.9));
    }
}
