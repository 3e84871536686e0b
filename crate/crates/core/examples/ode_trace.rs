//! Integrates `k'' = -k³/2 + 1` with RK4 from the curvature maximum and
//! compares the measured period with the quadrature value.
//!
//! ```text
//! cargo run --example ode_trace -- 2.0
//! ```

use elastica_lab::elastica;

fn main() -> elastica_lab::Result<()> {
    let c: f64 = std::env::args()
        .nth(1)
        .map_or(Ok(1.0), |a| a.parse())
        .expect("C must be a number");
    let pd = elastica::period_data(c)?;
    let trace = elastica::integrate_ode(c, pd.roots.k_max, 0.0, 2.5 * pd.period, 1e-4);

    println!("C = {c}, k in [{:.10}, {:.10}]", pd.roots.k_min, pd.roots.k_max);
    for e in &trace.extrema {
        println!("  {:?} at s = {:.10}, k = {:.10}", e.kind, e.s, e.k);
    }
    let measured = trace.measured_period().expect("two maxima in 2.5 periods");
    println!("period: quadrature {:.12}, ODE {:.12}", pd.period, measured);
    println!(
        "relative gap {:.2e}, first-integral drift {:.2e}",
        (measured - pd.period).abs() / pd.period,
        trace.drift
    );

    // Coarser steps show the fourth-order drift growth.
    for step in [1e-2, 5e-3, 2.5e-3] {
        let t = elastica::integrate_ode(c, pd.roots.k_max, 0.0, pd.period, step);
        println!("  step {step:.1e}: drift {:.3e}", t.drift);
    }
    Ok(())
}
