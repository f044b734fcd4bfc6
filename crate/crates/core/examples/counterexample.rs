//! The L¹ counterexample: ‖gᴸ‖₁ stays bounded while ‖T(gᴸ)‖₁ grows like
//! π² ln L. Also the Lᵖ norms of the truncations for p = 1.5 and p = 2.

use dbar::experiments::{counterexample_table, g_norm_limit, truncation_norms};

fn main() -> dbar::Result<()> {
    let rows = counterexample_table(64, true)?;
    println!("{:>3} {:>10} {:>10} {:>8} {:>7} {:>10}", "L", "|g|_1", "|Tg|_1", "ratio", "H_L", "quad gap");
    for r in rows.iter().filter(|r| r.l.is_power_of_two() || r.l <= 4) {
        println!(
            "{:>3} {:>10.5} {:>10.5} {:>8.4} {:>7.4} {:>10.1e}",
            r.l,
            r.g_norm_l1,
            r.tg_norm_l1,
            r.ratio,
            r.harmonic_hl,
            r.max_rel_discrepancy().unwrap_or(f64::NAN)
        );
    }
    println!("sup_L |g^L|_1 = {:.5}", g_norm_limit());
    let ls = [16, 32, 64, 128, 256];
    for p in [1.5, 2.0] {
        let norms = truncation_norms(p, &ls)?;
        let s: Vec<String> = norms.iter().map(|r| format!("L={} {:.4}", r.l, r.value)).collect();
        println!("p={p}: {}", s.join(", "));
    }
    Ok(())
}
