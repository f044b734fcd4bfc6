//! One-dimensional building blocks: Gauss–Legendre nodes, radial panel rules
//! and periodic trapezoid angles.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
///
/// Nodes are found by Newton iteration on the three-term recurrence,
/// starting from the Tricomi approximation; accurate to a few ulps for
/// the orders used here (n ≤ 512).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "Gauss-Legendre order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_interval(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    x.iter().zip(&w).map(|(&xi, &wi)| (mid + half * xi, half * wi)).collect()
}

/// Rule used along each ray of a polar quadrature rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialRule {
    /// Composite midpoint rule, second order.
    Midpoint,
    /// Composite two-point Gauss–Legendre panels, fourth order.
    #[default]
    GaussPanels,
}

impl RadialRule {
    /// Nodes and weights on `[0, 1]` for a requested node count `n`.
    ///
    /// `GaussPanels` uses `ceil(n/2)` panels, so odd `n` is rounded up.
    pub fn unit_nodes(self, n: usize) -> Vec<(f64, f64)> {
        match self {
            RadialRule::Midpoint => {
                let h = 1.0 / n as f64;
                (0..n).map(|i| ((i as f64 + 0.5) * h, h)).collect()
            }
            RadialRule::GaussPanels => {
                let panels = n.div_ceil(2);
                let h = 1.0 / panels as f64;
                let off = 0.5 / 3f64.sqrt();
                (0..panels)
                    .flat_map(|j| {
                        let mid = (j as f64 + 0.5) * h;
                        [(mid - off * h, 0.5 * h), (mid + off * h, 0.5 * h)]
                    })
                    .collect()
            }
        }
    }
}

/// Equally spaced angles `2πj/n` with the common trapezoid weight `2π/n`.
pub fn trapezoid_angles(n: usize) -> (Vec<f64>, f64) {
    let dt = 2.0 * PI / n as f64;
    ((0..n).map(|j| j as f64 * dt).collect(), dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in [1usize, 2, 5, 16, 33, 100] {
            let (x, w) = gauss_legendre(n);
            let total: f64 = w.iter().sum();
            assert_relative_eq!(total, 2.0, epsilon = 1e-13);
            // degree 2n-1 is exact
            let deg = 2 * n - 2;
            let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
            let want = 2.0 / (deg as f64 + 1.0);
            assert_relative_eq!(got, want, max_relative = 1e-12);
        }
    }

    #[test]
    fn nodes_are_sorted_and_interior() {
        let (x, _) = gauss_legendre(40);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
        assert!(x[0] > -1.0 && x[39] < 1.0);
    }

    #[test]
    fn radial_rules_sum_to_one() {
        for rule in [RadialRule::Midpoint, RadialRule::GaussPanels] {
            for n in [1, 2, 7, 64] {
                let s: f64 = rule.unit_nodes(n).iter().map(|p| p.1).sum();
                assert_relative_eq!(s, 1.0, epsilon = 1e-14);
            }
        }
        assert_eq!(RadialRule::GaussPanels.unit_nodes(7).len(), 8);
    }

    #[test]
    fn gauss_panels_are_exact_for_cubics() {
        let nodes = RadialRule::GaussPanels.unit_nodes(4);
        let got: f64 = nodes.iter().map(|(r, w)| w * r * r * r).sum();
        assert_relative_eq!(got, 0.25, epsilon = 1e-15);
    }
}
