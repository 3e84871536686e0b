//! Roots of the first-integral quartic `P_C(x) = -x⁴/4 + 2x + 2C` and their
//! sensitivities to `C`.
//!
//! ```text
//! cargo run --example quartic_roots
//! ```

use elastica_lab::quartic::{self, C_MIN};

fn main() -> elastica_lab::Result<()> {
    println!("C_min = {C_MIN:.12}");
    println!(
        "{:>10} {:>14} {:>14} {:>12} {:>12} {:>10}",
        "C", "k_m", "k_M", "dk_m/dC", "dk_M/dC", "H"
    );
    for c in [C_MIN + 1e-6, -0.5, 0.0, 0.3508649383, 1.0, 5.0, 100.0] {
        let r = quartic::roots(c)?;
        let (dmin, dmax) = quartic::root_sensitivities(c)?;
        println!(
            "{c:>10.4} {:>14.10} {:>14.10} {dmin:>12.6} {dmax:>12.6} {:>10.5}",
            r.k_min,
            r.k_max,
            r.h_quantity()
        );
    }

    // The deflated factorization reproduces P_C on the whole orbit.
    let r = quartic::roots(1.0)?;
    let worst = (0..=100)
        .map(|i| r.k_min + (r.k_max - r.k_min) * i as f64 / 100.0)
        .map(|x| (quartic::evaluate(1.0, x) - r.factored(x)).abs())
        .fold(0.0, f64::max);
    println!("\nC = 1: max |P_C - factored| on [k_m, k_M] = {worst:.2e}");

    match quartic::roots(-2.0) {
        Err(e) => println!("C = -2: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
