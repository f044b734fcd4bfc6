//! T(z₁ᵏdz̄₁) against the L²-minimal solution on the bidisc.

use dbar::forms::{FormExpr, OneForm};
use dbar::geometry::{AreaResolution, ProductDomain};
use dbar::hartogs::{canonical_pair, canonical_witness};
use dbar::solver::{solve_t, SolverConfig};
use num_complex::Complex64;

fn main() -> dbar::Result<()> {
    for k in 1..=3 {
        let w = canonical_witness(k, AreaResolution::default())?;
        println!("k={k}: max |<u_can, z1^m z2^n>| = {:.1e}, <u, 1> = {:.6}", w.max_ucan_inner, w.u_inner_one);
        let f = OneForm::symbolic(FormExpr::mono(1.0, k, 0, 0, 0), FormExpr::zero());
        for z1 in [0.0, 0.5, -0.3] {
            let z = [Complex64::new(z1, 0.2), Complex64::new(0.1, 0.0)];
            let (u, ucan) = canonical_pair(k, z)?;
            let t = solve_t(&f, &ProductDomain::bidisc(), z, &SolverConfig::default())?;
            println!("   z1={:.2}: u {:.6}  T(f) {:.6}  u_can {:.6}", z[0], u, t, ucan);
        }
    }
    Ok(())
}
