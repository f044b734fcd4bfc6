//! Moving a form from the Hartogs triangle to 𝔻 × 𝔻* and the second-term
//! collapse under z̄₁α₁ + z̄₂α₂ = 0.

use dbar::forms::{FormExpr, MonomialTerm, Var};
use dbar::hartogs::HartogsForm;
use num_complex::Complex64;

fn main() -> dbar::Result<()> {
    let g = FormExpr::mono(1.0, 2, 1, -1, 1);
    let alpha = HartogsForm::new(g.dbar(Var::Z1), g.dbar(Var::Z2));
    let f = alpha.pullback()?;
    println!("alpha = dbar({g}):\n  alpha1 = {}\n  alpha2 = {}", alpha.alpha1, alpha.alpha2);
    println!(
        "pullback: f1 = {:?}\n          f2 = {:?}",
        f.f1.as_symbolic().map(|e| e.to_string()),
        f.f2.as_symbolic().map(|e| e.to_string())
    );
    println!("defect of pullback: {}", f.dbar_defect()?);

    let h = FormExpr::new([MonomialTerm::new(Complex64::new(0.0, 2.0), 1, 0, -2, 1)]);
    let beta = HartogsForm::new(&FormExpr::mono(1.0, 0, 0, 0, 1) * &h, -(&FormExpr::mono(1.0, 0, 1, 0, 0) * &h));
    let fb = beta.substitute();
    println!("beta with zbar1*beta1 + zbar2*beta2 = 0: condition {}, f2 zero {}", beta.extra_condition_holds(), fb.f2.is_zero());
    println!("beta closed: {}", beta.is_closed());
    Ok(())
}
