//! Shape generators: parametric loops resampled to arc length, and exact
//! arc-and-segment splines.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::curve::{PlanarCurve, Point};
use super::metrics::ShapeMetrics;
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Default number of arc-length intervals for generated shapes.
pub const GENERATOR_INTERVALS: usize = 1024;

/// A smooth closed curve `φ ↦ γ(φ)` on `[0, 2π]` with non-vanishing speed.
pub trait ParametricLoop {
    fn point(&self, phi: f64) -> Point;
    fn d1(&self, phi: f64) -> Point;
    fn d2(&self, phi: f64) -> Point;
}

/// Resamples a parametric loop to `n` uniform arc-length intervals.
///
/// The total length comes from panel Gauss–Legendre; each node is then found
/// by Newton on the arc-length function, integrating speed from the previous
/// node. Positions, tangents and curvatures are evaluated from the
/// parametrization, so the only discretization is in where the nodes sit.
pub fn resample<L: ParametricLoop + ?Sized>(shape: &L, n: usize) -> PlanarCurve {
    assert!(n >= 16, "need at least 16 intervals");
    let speed = |phi: f64| shape.d1(phi).norm();
    let panel = GaussLegendre::cached(16);
    let fine = GaussLegendre::cached(8);
    let panels = 256;
    let dphi = TAU / panels as f64;
    let length: f64 = (0..panels)
        .map(|j| panel.integrate(j as f64 * dphi, (j + 1) as f64 * dphi, speed))
        .sum();
    let h = length / n as f64;

    let mut phis = Vec::with_capacity(n + 1);
    phis.push(0.0);
    let mut prev = 0.0;
    for _ in 1..n {
        let mut phi = prev + h / speed(prev);
        for _ in 0..50 {
            let arc = fine.integrate(prev, phi, speed);
            let step = (arc - h) / speed(phi);
            phi -= step;
            if step.abs() <= 1e-15 * TAU {
                break;
            }
        }
        phis.push(phi);
        prev = phi;
    }
    phis.push(TAU);

    let mut points = Vec::with_capacity(n + 1);
    let mut thetas = Vec::with_capacity(n + 1);
    let mut curvatures = Vec::with_capacity(n + 1);
    let mut last_theta: Option<f64> = None;
    for &phi in &phis {
        let d1 = shape.d1(phi);
        let d2 = shape.d2(phi);
        let raw = d1.y.atan2(d1.x);
        let theta = match last_theta {
            None => raw,
            Some(t) => raw + TAU * ((t - raw) / TAU).round(),
        };
        last_theta = Some(theta);
        points.push(shape.point(phi));
        thetas.push(theta);
        curvatures.push(d1.cross(d2) / d1.norm().powi(3));
    }
    let last = points.len() - 1;
    points[last] = points[0];
    PlanarCurve::from_samples(length, points, thetas, curvatures)
}

/// Circle of radius `r` centred at the origin.
#[derive(Debug, Clone, Copy)]
pub struct Circle {
    pub r: f64,
}

impl ParametricLoop for Circle {
    fn point(&self, phi: f64) -> Point {
        Point::polar(phi) * self.r
    }
    fn d1(&self, phi: f64) -> Point {
        Point::polar(phi + FRAC_PI_2) * self.r
    }
    fn d2(&self, phi: f64) -> Point {
        Point::polar(phi) * -self.r
    }
}

/// Axis-aligned ellipse `(a cos φ, b sin φ)`.
#[derive(Debug, Clone, Copy)]
pub struct Ellipse {
    pub a: f64,
    pub b: f64,
}

impl ParametricLoop for Ellipse {
    fn point(&self, phi: f64) -> Point {
        Point::new(self.a * phi.cos(), self.b * phi.sin())
    }
    fn d1(&self, phi: f64) -> Point {
        Point::new(-self.a * phi.sin(), self.b * phi.cos())
    }
    fn d2(&self, phi: f64) -> Point {
        Point::new(-self.a * phi.cos(), -self.b * phi.sin())
    }
}

/// Star-shaped curve `r(φ)(cos φ, sin φ)` with
/// `r(φ) = 1 + Σ_{n=2}^{modes} a_n cos nφ + b_n sin nφ`.
#[derive(Debug, Clone, Serialize)]
pub struct FourierRadius {
    /// `(n, a_n, b_n)`
    pub coefficients: Vec<(u32, f64, f64)>,
}

impl FourierRadius {
    /// `(r, r', r'')` at `phi`.
    pub fn radius(&self, phi: f64) -> (f64, f64, f64) {
        let mut r = 1.0;
        let mut r1 = 0.0;
        let mut r2 = 0.0;
        for &(n, a, b) in &self.coefficients {
            let nf = n as f64;
            let (s, c) = (nf * phi).sin_cos();
            r += a * c + b * s;
            r1 += nf * (b * c - a * s);
            r2 -= nf * nf * (a * c + b * s);
        }
        (r, r1, r2)
    }
}

impl ParametricLoop for FourierRadius {
    fn point(&self, phi: f64) -> Point {
        Point::polar(phi) * self.radius(phi).0
    }
    fn d1(&self, phi: f64) -> Point {
        let (r, r1, _) = self.radius(phi);
        Point::polar(phi) * r1 + Point::polar(phi + FRAC_PI_2) * r
    }
    fn d2(&self, phi: f64) -> Point {
        let (r, r1, r2) = self.radius(phi);
        Point::polar(phi) * (r2 - r) + Point::polar(phi + FRAC_PI_2) * (2.0 * r1)
    }
}

pub fn disc(r: f64, n: usize) -> Result<PlanarCurve> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Rejected(format!("disc radius must be positive, got {r}")));
    }
    Ok(resample(&Circle { r }, n))
}

pub fn ellipse(a: f64, b: f64, n: usize) -> Result<PlanarCurve> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Rejected(format!(
            "ellipse semi-axes must be positive, got {a}, {b}"
        )));
    }
    Ok(resample(&Ellipse { a, b }, n))
}

/// Smallest radius a Fourier shape may reach.
pub const MIN_FOURIER_RADIUS: f64 = 0.1;

/// Draws the Fourier coefficients for `seed` and checks the radius bound.
pub fn fourier_radius(seed: u64, modes: u32, amplitude: f64) -> Result<FourierRadius> {
    if modes < 2 {
        return Err(Error::Rejected(format!("fourier shapes need modes >= 2, got {modes}")));
    }
    if !(amplitude.is_finite() && amplitude >= 0.0) {
        return Err(Error::Rejected(format!(
            "amplitude must be non-negative, got {amplitude}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        if amplitude == 0.0 {
            0.0
        } else {
            rng.gen_range(-amplitude..=amplitude)
        }
    };
    let coefficients = (2..=modes).map(|n| (n, draw(), draw())).collect();
    let shape = FourierRadius { coefficients };
    let probes = 64 * modes as usize;
    let (phi, r) = (0..probes)
        .map(|i| {
            let phi = TAU * i as f64 / probes as f64;
            (phi, shape.radius(phi).0)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty");
    // refine the minimum by golden section around the best probe
    let (phi, r) = golden_min(
        |p| shape.radius(p).0,
        phi - TAU / probes as f64,
        phi + TAU / probes as f64,
    )
    .filter(|&(_, v)| v < r)
    .unwrap_or((phi, r));
    if r < MIN_FOURIER_RADIUS {
        return Err(Error::Rejected(format!(
            "radius {r:.6} < {MIN_FOURIER_RADIUS} at angle phi = {:.6} rad (seed {seed}, modes {modes}, amplitude {amplitude})",
            phi.rem_euclid(TAU)
        )));
    }
    Ok(shape)
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> Option<(f64, f64)> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let x1 = b - g * (b - a);
        let x2 = a + g * (b - a);
        if f(x1) < f(x2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    let x = 0.5 * (a + b);
    Some((x, f(x)))
}

/// Seeded random star-shaped curve, resampled to `n` arc-length intervals.
pub fn fourier_shape(seed: u64, modes: u32, amplitude: f64, n: usize) -> Result<PlanarCurve> {
    let shape = fourier_radius(seed, modes, amplitude)?;
    Ok(resample(&shape, n))
}

/// A straight segment (`k = 0`) or circular arc of constant curvature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Piece {
    pub start: Point,
    pub theta0: f64,
    pub length: f64,
    pub k: f64,
}

/// `sin(Δ/2)/(Δ/2)`: chord length over arc length for turning `Δ`.
pub fn chord_factor(delta: f64) -> f64 {
    let x = 0.5 * delta;
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0 + x.powi(4) / 120.0
    } else {
        x.sin() / x
    }
}

/// `(Δ - sin Δ)/(2Δ²)`: area between an arc and its chord, divided by the
/// squared arc length, signed like `Δ`.
pub fn segment_area_factor(delta: f64) -> f64 {
    if delta.abs() < 1e-3 {
        let d2 = delta * delta;
        delta / 12.0 * (1.0 - d2 / 20.0 + d2 * d2 / 840.0)
    } else {
        (delta - delta.sin()) / (2.0 * delta * delta)
    }
}

impl Piece {
    pub fn theta_at(&self, t: f64) -> f64 {
        self.theta0 + self.k * t
    }

    pub fn point_at(&self, t: f64) -> Point {
        let delta = self.k * t;
        let mid = self.theta0 + 0.5 * delta;
        self.start + Point::polar(mid) * (t * chord_factor(delta))
    }

    pub fn end(&self) -> Point {
        self.point_at(self.length)
    }

    pub fn end_theta(&self) -> f64 {
        self.theta_at(self.length)
    }

    pub fn energy(&self) -> f64 {
        0.5 * self.k * self.k * self.length
    }

    /// `½∫(x dy - y dx)` along the piece.
    pub fn area_contribution(&self) -> f64 {
        0.5 * self.start.cross(self.end()) + self.length * self.length * segment_area_factor(self.k * self.length)
    }
}

/// A chain of arcs and segments with tangent continuity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseCurve {
    pub pieces: Vec<Piece>,
}

impl PiecewiseCurve {
    /// Chains `(length, k)` pairs from `start` with initial heading `theta0`.
    pub fn chain(start: Point, theta0: f64, spec: &[(f64, f64)]) -> Self {
        let mut pieces = Vec::with_capacity(spec.len());
        let (mut p, mut th) = (start, theta0);
        for &(length, k) in spec {
            let piece = Piece {
                start: p,
                theta0: th,
                length,
                k,
            };
            p = piece.end();
            th = piece.end_theta();
            pieces.push(piece);
        }
        Self { pieces }
    }

    pub fn length(&self) -> f64 {
        self.pieces.iter().map(|p| p.length).sum()
    }

    /// Exact metrics of the chain (assumed closed); the circumradius is the
    /// largest distance from the origin among `samples` of the curve.
    pub fn metrics(&self, samples: &PlanarCurve) -> ShapeMetrics {
        let energy = self.pieces.iter().map(Piece::energy).sum();
        let area = self.pieces.iter().map(Piece::area_contribution).sum();
        ShapeMetrics::from_parts(energy, area, self.length(), samples.radius_about(Point::ORIGIN))
    }

    /// Uniform arc-length samples; curvature at a junction node is taken from
    /// the piece that starts there.
    pub fn sample(&self, n: usize) -> PlanarCurve {
        let length = self.length();
        let h = length / n as f64;
        let mut points = Vec::with_capacity(n + 1);
        let mut thetas = Vec::with_capacity(n + 1);
        let mut ks = Vec::with_capacity(n + 1);
        let mut idx = 0;
        let mut offset = 0.0;
        for i in 0..=n {
            let s = (i as f64 * h).min(length);
            while idx + 1 < self.pieces.len() && s >= offset + self.pieces[idx].length {
                offset += self.pieces[idx].length;
                idx += 1;
            }
            let piece = &self.pieces[idx];
            let t = (s - offset).min(piece.length);
            points.push(piece.point_at(t));
            thetas.push(piece.theta_at(t));
            ks.push(piece.k);
        }
        PlanarCurve::from_samples(length, points, thetas, ks)
    }
}

/// Radius of the four blending arcs between lobes and neck.
pub const DUMBBELL_BLEND_RADIUS: f64 = 0.5;

/// Two unit-radius lobes joined by a straight neck of length `neck_length`
/// and half-width `1/neck_length²`, with circular blends of radius
/// [`DUMBBELL_BLEND_RADIUS`]. Counter-clockwise, centred at the origin.
pub fn dumbbell_pieces(neck_length: f64) -> Result<PiecewiseCurve> {
    if !(neck_length.is_finite() && neck_length >= 1.0) {
        return Err(Error::Rejected(format!("neck_length must be >= 1, got {neck_length}")));
    }
    let rho = DUMBBELL_BLEND_RADIUS;
    let w = 1.0 / (neck_length * neck_length);
    let xb = 0.5 * neck_length;
    let d = ((1.0 + rho).powi(2) - (w + rho).powi(2)).max(0.0).sqrt();
    let alpha = (w + rho).atan2(d);
    let blend = (rho * (FRAC_PI_2 - alpha), -1.0 / rho);
    let lobe = (TAU - 2.0 * alpha, 1.0);
    let neck = (2.0 * xb, 0.0);
    let spec: Vec<(f64, f64)> = [neck, blend, lobe, blend, neck, blend, lobe, blend]
        .into_iter()
        .filter(|p| p.0 > 0.0)
        .collect();
    Ok(PiecewiseCurve::chain(Point::new(-xb, -w), 0.0, &spec))
}

/// Sampled dumbbell with spacing at most `0.005`, and never fewer than
/// [`GENERATOR_INTERVALS`] intervals.
pub fn dumbbell(neck_length: f64) -> Result<PlanarCurve> {
    let pieces = dumbbell_pieces(neck_length)?;
    let n = ((pieces.length() / 0.005).ceil() as usize).max(GENERATOR_INTERVALS);
    Ok(pieces.sample(n))
}

/// Total turning check shared by tests: `θ(L) - θ(0)` rounded to multiples
/// of `π`.
pub fn turning_in_half_turns(curve: &PlanarCurve) -> i64 {
    (curve.total_turning() / PI).round() as i64
}

#[cfg(test)]
mod tests {
    use super::super::metrics::metrics;
    use super::*;
    use crate::quadrature::adaptive;

    #[test]
    fn resampled_circle_is_exact() {
        let c = disc(1.5, 512).unwrap();
        assert!((c.length - TAU * 1.5).abs() < 1e-12);
        assert!(c.closed && c.corner_turning == 0.0);
        for w in c.points.windows(2) {
            let chord = (w[1] - w[0]).norm();
            let h = c.spacing();
            let expect = 2.0 * 1.5 * (h / 3.0).sin();
            assert!((chord - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn ellipse_matches_parametric_oracle() {
        let (a, b) = (2.0, 1.0);
        let c = ellipse(a, b, 4096).unwrap();
        let m = metrics(&c).unwrap();
        // E = ½∫ k² |γ'| dφ with k = ab/(a² sin² + b² cos²)^{3/2}
        let e = adaptive(
            |p: f64| {
                let q = a * a * p.sin().powi(2) + b * b * p.cos().powi(2);
                0.5 * (a * b).powi(2) / q.powf(2.5)
            },
            0.0,
            TAU,
            1e-14,
            1e-14,
            4000,
        )
        .value;
        assert!((m.energy - e).abs() < 1e-7, "{} vs {e}", m.energy);
        assert!((m.area - PI * a * b).abs() < 1e-7);
        let perim = adaptive(
            |p: f64| (a * a * p.sin().powi(2) + b * b * p.cos().powi(2)).sqrt(),
            0.0,
            TAU,
            1e-14,
            1e-14,
            4000,
        )
        .value;
        assert!((m.perimeter - perim).abs() < 1e-10);
    }

    #[test]
    fn fourier_zero_amplitude_is_unit_circle() {
        let c = fourier_shape(42, 2, 0.0, 1024).unwrap();
        let m = metrics(&c).unwrap();
        assert!((m.eea / PI.powi(3) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn fourier_is_deterministic_and_rejects_large_amplitude() {
        let a = fourier_radius(9, 5, 0.1).unwrap();
        let b = fourier_radius(9, 5, 0.1).unwrap();
        assert_eq!(a.coefficients, b.coefficients);
        let err = fourier_radius(7, 4, 2.0).unwrap_err();
        assert!(matches!(err, Error::Rejected(_)));
        assert!(err.to_string().contains("angle"));
        assert!(fourier_radius(1, 1, 0.1).is_err());
    }

    #[test]
    fn fourier_shapes_satisfy_inequality() {
        for (seed, modes, amp) in [(42, 6, 0.1), (7, 4, 0.3)] {
            let m = metrics(&fourier_shape(seed, modes, amp, 1024).unwrap()).unwrap();
            assert!(m.eea >= PI.powi(3), "seed {seed}: {}", m.eea);
        }
    }

    #[test]
    fn dumbbell_geometry() {
        let p = dumbbell_pieces(1.0).unwrap();
        let c = p.sample(2048);
        assert!(c.closure_gap() <= 1e-6 * c.length);
        assert_eq!(turning_in_half_turns(&c), 2);
        let mut prev = 0.0;
        let mut sums = vec![];
        for neck in [5.0, 10.0, 20.0] {
            let p = dumbbell_pieces(neck).unwrap();
            let c = p.sample(4096);
            assert!(c.closed, "neck {neck}");
            let m = p.metrics(&c);
            assert!(m.perimeter > prev && m.perimeter >= 2.0 * neck);
            prev = m.perimeter;
            assert!(m.energy_plus_area() <= 50.0);
            sums.push(m.energy_plus_area());
        }
        let (lo, hi) = sums.iter().fold((f64::MAX, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
        assert!(hi <= 2.0 * lo);
        let p = dumbbell_pieces(20.0).unwrap();
        let m = p.metrics(&p.sample(4096));
        assert!(m.gage_ratio < FRAC_PI_2, "{}", m.gage_ratio);
        assert!(dumbbell_pieces(0.5).is_err());
    }

    #[test]
    fn piece_area_matches_sampled_area() {
        let p = dumbbell_pieces(5.0).unwrap();
        let c = dumbbell(5.0).unwrap();
        let exact = p.metrics(&c);
        let sampled = metrics(&c).unwrap();
        assert!((exact.area - sampled.area).abs() < 1e-5 * exact.area);
    }

    #[test]
    fn area_factor_series_is_continuous() {
        for d in [9.99e-4, 1.001e-3, -1e-3] {
            let series = {
                let d2 = d * d;
                d / 12.0 * (1.0 - d2 / 20.0 + d2 * d2 / 840.0)
            };
            let direct = (d - f64::sin(d)) / (2.0 * d * d);
            assert!((series - direct).abs() < 1e-9);
            assert!((chord_factor(d) - (0.5 * d).sin() / (0.5 * d)).abs() < 1e-15);
        }
    }
}
