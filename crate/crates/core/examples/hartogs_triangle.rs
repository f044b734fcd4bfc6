//! α = dz̄₂ on the Hartogs triangle: v = T(f)∘φ is z̄₂ and stays in L⁴,
//! while the canonical solution z̄₂ − z₂⁻¹/2 does not.

use dbar::forms::NormOptions;
use dbar::geometry::AreaResolution;
use dbar::hartogs::{canonical_constant, hartogs_report, solve_hartogs, truncation_sweep, HartogsForm};
use dbar::solver::SolverConfig;
use num_complex::Complex64;

fn main() -> dbar::Result<()> {
    let alpha = HartogsForm::dzbar2();
    let z = [Complex64::new(0.1, 0.05), Complex64::new(0.3, -0.4)];
    println!("v(z) = {}  (z2bar = {})", solve_hartogs(&alpha, z, &SolverConfig::default())?, z[1].conj());
    let c = canonical_constant(AreaResolution::default())?;
    println!("orthogonality constant c = {c:.12}");
    let rep = hartogs_report(&alpha, 2.0, 1e-4, &NormOptions::default())?;
    println!(
        "p=2: |a1| {:.6} |a2| {:.6} |d11| {:.3} |d12| {:.3}  |v| {:.6}  ratio {:?}",
        rep.alpha1.value, rep.alpha2.value, rep.d11.value, rep.d12.value, rep.v_norm.value, rep.ratio
    );
    let opts = NormOptions { resolution: AreaResolution::new(24, 16), ..Default::default() };
    for row in truncation_sweep(4.0, &[1e-1, 1e-2, 1e-3, 1e-4, 1e-6], c, &opts)? {
        println!("eps {:>7.0e}: |v|_4 = {:.6}   |v_can|_4^4 = {:.6}", row.epsilon, row.v_norm, row.v_can_pow);
    }
    Ok(())
}
