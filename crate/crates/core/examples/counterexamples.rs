//! Families showing that `E²A >= π³` needs simple connectivity (thin rings)
//! and a bounded domain (flattening Gaussian graphs), and that the Gage ratio
//! bound needs convexity (dumbbells).

use std::f64::consts::PI;

use elastica_lab::harness::{self, Counterexample};

fn main() -> elastica_lab::Result<()> {
    let pi3 = PI.powi(3);
    let sweeps = [
        (Counterexample::Ring, "R", vec![1.0, 3.0, 10.0, 100.0, 1000.0]),
        (Counterexample::Gaussian, "α", vec![1.0, 0.1, 0.01]),
        (Counterexample::Dumbbell, "neck", vec![5.0, 10.0, 20.0, 40.0]),
    ];
    for (kind, name, params) in sweeps {
        let rows = harness::counterexample_sweep(kind, &params)?;
        println!("{kind:?}");
        for r in &rows {
            print!(
                "  {name} = {:<7} E = {:<12.6e} A = {:<12.6e} E²A/π³ = {:.6e}",
                r.param,
                r.energy,
                r.area,
                r.eea / pi3
            );
            match r.gage_ratio {
                Some(g) => println!("  EA/L = {g:.4}{}", if g < PI / 2.0 { " < π/2" } else { "" }),
                None => println!(),
            }
        }
        println!("  strictly decreasing: {}\n", harness::strictly_decreasing(&rows));
    }
    Ok(())
}
