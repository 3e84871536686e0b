//! Checks `E²A >= π³`, `L <= 2R²E` and, on convex samples, `EA/L >= π/2`
//! over seeded random shapes.
//!
//! ```text
//! cargo run --release --example isoperimetric_sweep -- 1000 7
//! ```

use std::f64::consts::PI;

use elastica_lab::harness::{self, Family};

fn main() -> elastica_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(200, |a| a.parse().expect("sample count"));
    let seed: u64 = args.next().map_or(1, |a| a.parse().expect("seed"));

    for family in [Family::Fourier, Family::Ellipse, Family::Dumbbell] {
        let count = if family == Family::Dumbbell { 6 } else { n };
        let report = harness::verify_family(family, count, seed)?;
        println!("{family}: {count} samples in {:.2} s", report.runtime);
        println!(
            "  min E²A/π³ = {:.12} (seed {}), min gage ratio {:.6} (seed {})",
            report.min_eea / PI.powi(3),
            report.min_eea_seed,
            report.min_gage_ratio,
            report.min_gage_ratio_seed
        );
        println!(
            "  convex {}, violations {}, grazing {}",
            report.convex_samples,
            report.violations.len(),
            report.grazing.len()
        );
        for v in report.violations.iter().take(5) {
            println!("    seed {} {}: {} < {}", v.seed, v.quantity, v.value, v.bound);
        }
    }
    Ok(())
}
