//! Closed critical curves with two and three curvature periods, the
//! cut-and-reflect competitor that beats each of them, and the reason there
//! is no one-period curve.

use elastica_lab::critical::{self, SurgeryKind};
use elastica_lab::Error;

fn main() -> elastica_lab::Result<()> {
    for n in 1..=3 {
        println!("n = {n}");
        let crit = match critical::solve_closed_critical(n) {
            Ok(c) => c,
            Err(Error::Infeasible(why)) => {
                println!("  infeasible: {why}\n");
                continue;
            }
            Err(e) => return Err(e),
        };
        println!(
            "  C = {:.10}, period {:.8}, closure gap {:.1e}",
            crit.c, crit.period, crit.closure_gap
        );
        println!(
            "  E = {:.8}, A = {:.8}, E + A = {:.8}",
            crit.metrics.energy,
            crit.metrics.area,
            crit.metrics.energy_plus_area()
        );
        let s = critical::surgery_compare(&crit)?;
        assert_eq!(s.kind, SurgeryKind::CutAndReflect);
        println!(
            "  cut at apex l = {:.6} with a = {:.6}: dE = {:.2e}, dA = {:.6}, d(E + A) = {:.6}\n",
            s.apex,
            s.a,
            s.d_energy,
            s.d_area,
            s.d_total()
        );
    }

    let disc = critical::constant_disc()?;
    println!(
        "constant curvature: E + A = {:.10}, star margin {:.3}",
        disc.metrics.energy_plus_area(),
        disc.star_margin
    );
    Ok(())
}
