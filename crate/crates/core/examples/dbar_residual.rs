//! Finite-difference check that ∂̄(Tf) = f on interior grids.

use dbar::experiments::fk_form;
use dbar::forms::{FormExpr, OneForm};
use dbar::geometry::ProductDomain;
use dbar::solver::{dbar_residual, ResidualGrid, SolutionField, SolverConfig};

fn main() -> dbar::Result<()> {
    let cases = [
        ("f^1 on bidisc", fk_form(1), ProductDomain::bidisc()),
        ("f^2 on bidisc", fk_form(2), ProductDomain::bidisc()),
        ("z1^2 dz1bar", OneForm::symbolic(FormExpr::mono(1.0, 2, 0, 0, 0), FormExpr::zero()), ProductDomain::bidisc()),
        ("dw2bar on D x D*", OneForm::symbolic(FormExpr::zero(), FormExpr::one()), ProductDomain::disc_times_punctured()),
    ];
    for (name, f, d) in cases {
        let field = SolutionField::new(f, d, SolverConfig::quadrature())?;
        let grid = ResidualGrid::interior(&d, 8, 0.1)?;
        let rep = dbar_residual(&field, &grid, 1e-3)?;
        println!(
            "{name:<18} points {:>3}  max {:.2e}  (z1 {:.2e}, z2 {:.2e})  l2 {:.2e}",
            rep.points, rep.max_err, rep.max_err_z1, rep.max_err_z2, rep.l2_err
        );
    }
    Ok(())
}
