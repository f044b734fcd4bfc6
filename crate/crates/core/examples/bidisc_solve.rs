//! u = T(f) on the bidisc for f = ∂̄((1/k)|z₁z₂|^{2k}), by the closed-form
//! path and by quadrature, against (1/k)|z₁z₂|^{2k} − 1/k.

use dbar::experiments::fk_form;
use dbar::geometry::ProductDomain;
use dbar::solver::{solve_symbolic, solve_t_terms, SolverConfig};
use num_complex::Complex64;

fn main() -> dbar::Result<()> {
    let d = ProductDomain::bidisc();
    let z = [Complex64::new(0.5, 0.1), Complex64::new(-0.3, 0.4)];
    let t = (z[0] * z[1]).norm_sqr();
    for k in [1, 2, 3, 5] {
        let f = fk_form(k);
        let exact = (t.powi(k as i32) - 1.0) / k as f64;
        let auto = solve_t_terms(&f, &d, z, &SolverConfig::default())?;
        let quad = solve_t_terms(&f, &d, z, &SolverConfig::quadrature())?;
        println!(
            "k={k}: exact {exact:+.12}  closed-form {:+.12}  quadrature {:+.12}  (terms K2f2 {:+.6} K1f1 {:+.6} tensor {:+.6})",
            auto.total().re,
            quad.total().re,
            auto.k2_f2.re,
            auto.k1_f1.re,
            auto.tensor_d.re
        );
        println!("      u = {}", solve_symbolic(&f, &d)?);
    }
    Ok(())
}
