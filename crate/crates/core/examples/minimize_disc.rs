//! Minimizes `E + A` directly, starting from a 3:1 ellipse, and watches the
//! iterate become the disc of radius `2^(-1/3)`.
//!
//! ```text
//! cargo run --release --example minimize_disc -- 512
//! ```

use std::f64::consts::PI;

use elastica_lab::curvegeom;
use elastica_lab::minimize::{self, OptimState};

fn main() -> elastica_lab::Result<()> {
    let nodes: usize = std::env::args().nth(1).map_or(256, |a| a.parse().expect("node count"));
    let init = OptimState::from_curve(&curvegeom::ellipse(3.0, 1.0, nodes)?)?;
    let res = minimize::minimize_energy(&init, 50_000)?;

    let every = (res.log.len() / 12).max(1);
    println!(
        "{:>5} {:>5} {:>13} {:>11} {:>11} {:>10}",
        "outer", "iter", "objective", "E", "A", "violation"
    );
    for row in res.log.iter().step_by(every).chain(res.log.last()) {
        println!(
            "{:>5} {:>5} {:>13.9} {:>11.8} {:>11.8} {:>10.2e}",
            row.outer, row.iter, row.objective, row.energy, row.area, row.violation
        );
    }

    let m = res.metrics;
    let r_opt = 2f64.powf(-1.0 / 3.0);
    println!("\nconverged {} after {} iterations", res.converged, res.iterations);
    println!("E²A = {:.10}  (π³ = {:.10})", m.eea, PI.powi(3));
    println!(
        "E + A = {:.10}  (disc {:.10})",
        m.energy_plus_area(),
        curvegeom::disc_energy_plus_area()
    );
    println!(
        "radius ≈ L/2π = {:.10}  (2^(-1/3) = {r_opt:.10})",
        m.perimeter / (2.0 * PI)
    );
    println!(
        "curvature std {:.2e}, stationarity residual {:.2e}",
        res.curvature_std, res.stationarity_residual
    );
    Ok(())
}
