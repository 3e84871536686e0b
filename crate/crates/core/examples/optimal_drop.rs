//! Solves for the optimal drop, prints its invariants and checks the
//! optimality conditions and bounds. With a path argument the curve is also
//! written as `s,x,y,theta,k` CSV.
//!
//! ```text
//! cargo run --release --example optimal_drop -- drop.csv
//! ```

use std::f64::consts::PI;
use std::time::Instant;

use elastica_lab::{curvegeom, drop, io};

fn main() -> elastica_lab::Result<()> {
    let t0 = Instant::now();
    let sol = drop::solve_drop(1e-12)?;
    let elapsed = t0.elapsed();

    println!("C*        = {:.12}", sol.c_star);
    println!("s_m, s_M  = {:.10}, {:.10}", sol.s_m, sol.s_max);
    println!("k_m, k_M  = {:.10}, {:.10}", sol.k_min, sol.k_max);
    println!("E         = {:.10}", sol.energy);
    println!(
        "A         = {:.10}   (2A - E = {:.2e})",
        sol.area,
        2.0 * sol.area - sol.energy
    );
    println!("E + A     = {:.10}", sol.energy_plus_area);
    println!("  π       = {PI:.10}");
    println!("  disc    = {:.10}", curvegeom::disc_energy_plus_area());
    println!("Q         = ({:.3e}, {:.3e})", sol.q.x, sol.q.y);
    println!("solved in {:.1} ms", elapsed.as_secs_f64() * 1e3);

    let r = drop::verify_optimality(&sol);
    println!(
        "\nresiduals b1 {:.2e}  b2 {:.2e}  b3 {:.2e}  b4 {:.2e}",
        r.b1, r.b2, r.b3, r.b4
    );
    let b = drop::drop_bounds_report(&sol);
    println!(
        "length {:.6} (bound {}), corner radius {:.6}",
        b.length,
        drop::LENGTH_BOUND,
        b.corner_radius
    );
    println!("all bounds hold: {}", b.all_hold());
    println!(
        "sign changes of I(C) - π/2 on the probe grid: {}",
        drop::uniqueness_probe()?
    );

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, io::curve_csv(sol.curve(), 1))?;
        println!("wrote {path}");
    }
    Ok(())
}
