//! Domains with small `E²A` that are not bounded simply connected sets.

use std::f64::consts::PI;

use crate::quadrature::adaptive;

/// Annulus `R < |x| < R + 1/R`: `E = π/R + πR/(R²+1)`, `A = 2π + π/R²`.
pub fn ring_metrics(r: f64) -> (f64, f64) {
    assert!(r > 0.0, "ring radius must be positive");
    (PI / r + PI * r / (r * r + 1.0), 2.0 * PI + PI / (r * r))
}

/// Tail level for the Gaussian truncation.
const GAUSSIAN_TAIL: f64 = 1e-12;

/// Half-width `X` with `e^{-αX²/2} = 1e-12`.
pub fn gaussian_truncation(alpha: f64) -> f64 {
    (2.0 * (1.0 / GAUSSIAN_TAIL).ln() / alpha).sqrt()
}

/// `½ (α²x² - α)² e^{-αx²} / (1 + α²x² e^{-αx²})^{5/2}`
pub fn gaussian_energy_density(alpha: f64, x: f64) -> f64 {
    let ax2 = alpha * x * x;
    let e = (-ax2).exp();
    let g2 = alpha * ax2 * e;
    0.5 * (alpha * (ax2 - 1.0)).powi(2) * e / (1.0 + g2).powf(2.5)
}

/// Subgraph of `e^{-αx²/2}`: exact area `√(2π/α)` and the boundary energy
/// by adaptive quadrature on `[-(X+4), X+4]`.
pub fn gaussian_metrics(alpha: f64) -> (f64, f64) {
    assert!(alpha > 0.0, "alpha must be positive");
    let area = (2.0 * PI / alpha).sqrt();
    let x = gaussian_truncation(alpha) + 4.0;
    let half = adaptive(|t| gaussian_energy_density(alpha, t), 0.0, x, 1e-15, 1e-13, 20_000);
    (2.0 * half.value, area)
}

#[cfg(test)]
mod tests {
    use super::super::metrics::metrics;
    use super::super::shapes::disc;
    use super::*;
    use crate::quadrature::GaussLegendre;

    #[test]
    fn ring_closed_forms() {
        let (e, a) = ring_metrics(1.0);
        assert!((e - 1.5 * PI).abs() < 1e-15 && (a - 3.0 * PI).abs() < 1e-15);
        let eea = |r: f64| {
            let (e, a) = ring_metrics(r);
            e * e * a
        };
        assert!(eea(1000.0) < 0.01 * PI.powi(3));
        assert!(eea(10.0) > eea(100.0) && eea(100.0) > eea(1000.0));
    }

    #[test]
    fn ring_agrees_with_two_circles() {
        for r in [0.5, 2.0, 7.0] {
            let inner = metrics(&disc(r, 1024).unwrap()).unwrap();
            let outer = metrics(&disc(r + 1.0 / r, 1024).unwrap()).unwrap();
            let (e, a) = ring_metrics(r);
            assert!((inner.energy + outer.energy - e).abs() < 1e-9 * e);
            assert!((outer.area - inner.area - a).abs() < 1e-9 * a);
        }
    }

    #[test]
    fn gaussian_area_and_decay() {
        let (_, a) = gaussian_metrics(2.0 * PI);
        assert!((a - 1.0).abs() < 1e-15);
        let v: Vec<f64> = [1.0, 0.1, 0.01]
            .iter()
            .map(|&al| {
                let (e, a) = gaussian_metrics(al);
                e * e * a
            })
            .collect();
        assert!(v[0] > v[1] && v[1] > v[2], "{v:?}");
    }

    #[test]
    fn gaussian_energy_two_derivations_agree() {
        // scaled form α^{3/2}/2 ∫ (u²-1)² e^{-u²} / (1 + α u² e^{-u²})^{5/2} du
        // and the graph form ½∫ g''²/(1+g'²)^{5/2} dx with g = e^{-αx²/2},
        // both on fixed Gauss-Legendre panels.
        let rule = GaussLegendre::new(32);
        let panels = |f: &dyn Fn(f64) -> f64, x: f64| -> f64 {
            let n = 400;
            let h = x / n as f64;
            (0..n)
                .map(|i| rule.integrate(i as f64 * h, (i + 1) as f64 * h, f))
                .sum::<f64>()
                * 2.0
        };
        for alpha in [1.0, 0.3] {
            let (e, _) = gaussian_metrics(alpha);
            let scaled = 0.5
                * alpha.powf(1.5)
                * panels(
                    &|u: f64| {
                        let w = (-u * u).exp();
                        (u * u - 1.0).powi(2) * w / (1.0 + alpha * u * u * w).powf(2.5)
                    },
                    12.0,
                );
            let graph = 0.5
                * panels(
                    &|x: f64| {
                        let g = (-0.5 * alpha * x * x).exp();
                        let g1 = -alpha * x * g;
                        let g2 = (alpha * alpha * x * x - alpha) * g;
                        g2 * g2 / (1.0 + g1 * g1).powf(2.5)
                    },
                    12.0 / alpha.sqrt(),
                );
            assert!((e - scaled).abs() < 1e-8, "{e} vs {scaled}");
            assert!((e - graph).abs() < 1e-8, "{e} vs {graph}");
        }
    }
}
