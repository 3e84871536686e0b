//! Period, per-period turning and energy of the curvature orbit for a range
//! of first-integral constants, plus the drop half-arc turning `I(C)`.
//!
//! The per-period turning never reaches `2π`, which is why no closed
//! one-period critical curve exists.

use std::f64::consts::PI;

use elastica_lab::elastica::{self, Quadrature};
use elastica_lab::quartic::C_MIN;

fn main() -> elastica_lab::Result<()> {
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12}",
        "C", "T", "∫k over T", "E over T", "I(C)"
    );
    let grid = [C_MIN + 1e-8, -0.9, -0.5, 0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0];
    for c in grid {
        let pd = elastica::period_data(c)?;
        let half = pd
            .turning()
            .map(|t| format!("{t:12.9}"))
            .unwrap_or_else(|| format!("{:>12}", "-"));
        println!(
            "{c:>8.3} {:>12.8} {:>12.8} {:>12.8} {half}",
            pd.period, pd.period_turning, pd.energy
        );
    }

    println!(
        "\nI(0) = {:.15}, 2π/3 = {:.15}",
        elastica::period_data(0.0)?.turning().unwrap(),
        2.0 * PI / 3.0
    );
    println!(
        "period energy lower bound (π/4)√(22/3) = {:.12}",
        elastica::period_energy_lower_bound()
    );

    // Gauss-Legendre node count barely matters once the endpoint
    // singularities are substituted away.
    let coarse = elastica::period_data_with(1.0, Quadrature { nodes: 32 })?;
    let fine = elastica::period_data_with(1.0, Quadrature { nodes: 256 })?;
    println!(
        "C = 1 period with 32 vs 256 nodes: {:.3e} apart",
        (coarse.period - fine.period).abs()
    );
    Ok(())
}
