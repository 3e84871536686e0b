use std::f64::consts::PI;

use serde::Serialize;

use super::curve::{PlanarCurve, Point};
use crate::error::{Error, Result};
use crate::quadrature::simpson_uniform;

/// Energy, area and length of a closed shape, plus the derived ratios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapeMetrics {
    /// `½ ∫ k² ds`
    #[serde(rename = "E")]
    pub energy: f64,
    /// Signed enclosed area, positive for counter-clockwise curves.
    #[serde(rename = "A")]
    pub area: f64,
    #[serde(rename = "Lperim")]
    pub perimeter: f64,
    /// `E² A`
    #[serde(rename = "EEA")]
    pub eea: f64,
    /// `E A / L`
    pub gage_ratio: f64,
    /// Largest distance from the origin to the curve.
    pub circumradius: f64,
}

impl ShapeMetrics {
    pub fn from_parts(energy: f64, area: f64, perimeter: f64, circumradius: f64) -> Self {
        Self {
            energy,
            area,
            perimeter,
            eea: energy * energy * area,
            gage_ratio: energy * area / perimeter,
            circumradius,
        }
    }

    pub fn energy_plus_area(&self) -> f64 {
        self.energy + self.area
    }
}

/// `E + A` of the disc of radius `2^(-1/3)`, the smallest possible value:
/// `3π·2^(-2/3)`.
pub fn disc_energy_plus_area() -> f64 {
    3.0 * PI * 2f64.powf(-2.0 / 3.0)
}

/// Metrics of a closed sampled curve.
///
/// The energy is Simpson's rule on `k²/2`. The area integrates the
/// tangential form `½∮(x sin θ - y cos θ) ds` with the same rule, which uses
/// the sampled tangents and so avoids the `O(h²)` chord defect of the plain
/// polygon shoelace (see [`polygon_area`]).
pub fn metrics(curve: &PlanarCurve) -> Result<ShapeMetrics> {
    if !curve.closed {
        return Err(Error::Contract(format!(
            "metrics need a closed curve; endpoint gap is {:.3e} for length {}",
            curve.closure_gap(),
            curve.length
        )));
    }
    let h = curve.spacing();
    let half_k2: Vec<f64> = curve.curvatures.iter().map(|k| 0.5 * k * k).collect();
    let energy = simpson_uniform(&half_k2, h);
    Ok(ShapeMetrics::from_parts(
        energy,
        tangential_area(curve),
        curve.length,
        curve.radius_about(Point::ORIGIN),
    ))
}

/// `½∫(x sin θ - y cos θ) ds` by Simpson's rule.
pub fn tangential_area(curve: &PlanarCurve) -> f64 {
    let integrand: Vec<f64> = curve
        .points
        .iter()
        .zip(&curve.thetas)
        .map(|(p, t)| {
            let (s, c) = t.sin_cos();
            p.x * s - p.y * c
        })
        .collect();
    0.5 * simpson_uniform(&integrand, curve.spacing())
}

/// Discrete shoelace `½ Σ (x_i y_{i+1} - x_{i+1} y_i)` over the sample
/// polygon. For a closed curve whose last sample repeats the first this is the
/// area of the inscribed polygon.
pub fn polygon_area(points: &[Point]) -> f64 {
    let n = points.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        let (a, b) = (points[i], points[(i + 1) % n]);
        s += a.cross(b);
    }
    0.5 * s
}

/// Largest `|k|` over the samples.
pub fn max_abs_curvature(curve: &PlanarCurve) -> f64 {
    curve.curvatures.iter().fold(0.0, |m, k| m.max(k.abs()))
}

/// Sample standard deviation of the curvature values, excluding the
/// repeated end sample of a closed curve.
pub fn curvature_std(curve: &PlanarCurve) -> f64 {
    let k = if curve.closed {
        &curve.curvatures[..curve.curvatures.len() - 1]
    } else {
        &curve.curvatures[..]
    };
    let n = k.len() as f64;
    let mean = k.iter().sum::<f64>() / n;
    (k.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt()
}

/// Whether every curvature sample is at least `-tol`.
pub fn is_convex(curve: &PlanarCurve, tol: f64) -> bool {
    curve.curvatures.iter().all(|&k| k >= -tol)
}
