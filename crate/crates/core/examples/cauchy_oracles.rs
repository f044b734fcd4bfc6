//! Planar Cauchy transform by quadrature against the exact disc formulas,
//! with the observed convergence order per case.

use dbar::experiments::oracle_suite;

fn main() -> dbar::Result<()> {
    let rep = oracle_suite()?;
    println!("{:<9} {:>2} {:>14}  {:>10} {:>10} {:>10} {:>10}  order", "kind", "k", "z", "n=32", "n=64", "n=128", "n=256");
    for c in &rep.cases {
        let order = c.fit.order.map_or("floor".to_string(), |q| format!("{q:.2}"));
        println!(
            "{:<9} {:>2} {:>6.2}{:+.2}i  {:>10.2e} {:>10.2e} {:>10.2e} {:>10.2e}  {order}",
            format!("{:?}", c.kind),
            c.k,
            c.z[0],
            c.z[1],
            c.errors[0],
            c.errors[1],
            c.errors[2],
            c.errors[3]
        );
    }
    println!("k=1 antiholo vs holo max difference: {:e}", rep.identity_max_diff);
    println!("suite {}", if rep.pass { "PASS" } else { "FAIL" });
    Ok(())
}
