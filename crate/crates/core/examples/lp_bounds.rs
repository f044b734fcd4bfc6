//! ‖Tf‖_p / ‖f‖_ℬ over random closed forms, and ‖K₁g‖_p / ‖g‖_p.

use dbar::experiments::{cauchy_lp_property, lp_bound_sweep, LpBoundOptions};
use dbar::geometry::{AreaResolution, ProductDomain};

fn main() -> dbar::Result<()> {
    let opts = LpBoundOptions { resolution: AreaResolution::new(16, 16), ..Default::default() };
    let sweep = lp_bound_sweep(8, &[1.0, 2.0, 4.0], 11, &ProductDomain::bidisc(), &opts)?;
    for m in &sweep.maxima {
        println!("p={}: max ratio {:.5} (coarse {:.5}, change {:.1e})", m.p, m.max_ratio, m.max_ratio_coarse, m.rel_change);
    }
    for p in [1.0, 2.0, 4.0] {
        let rep = cauchy_lp_property(p, 20, 5)?;
        println!("K1 on L^{p}: max ratio {:.5} over {} monomials", rep.max_ratio.unwrap_or(f64::NAN), rep.ratios.len());
    }
    Ok(())
}
