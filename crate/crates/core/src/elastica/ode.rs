//! Fixed-step RK4 integration of `k'' = -k³/2 + 1`.
//!
//! This is the independent oracle for the quadrature route: no adaptivity,
//! no elliptic functions, just the second-order ODE as a first-order system.

use serde::Serialize;

/// Right-hand side of the curvature equation.
#[inline]
pub fn curvature_acceleration(k: f64) -> f64 {
    -0.5 * k * k * k + 1.0
}

/// First-integral residual `k'² + k⁴/4 - 2k - 2C`.
#[inline]
pub fn first_integral_residual(c: f64, k: f64, kp: f64) -> f64 {
    kp * kp - crate::quartic::evaluate(c, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeSample {
    pub s: f64,
    pub k: f64,
    pub kp: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExtremumKind {
    Minimum,
    Maximum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extremum {
    pub s: f64,
    pub k: f64,
    pub kind: ExtremumKind,
}

/// A sampled solution together with its first-integral drift and located
/// curvature extrema.
#[derive(Debug, Clone, Serialize)]
pub struct OdeTrace {
    pub c: f64,
    pub step: f64,
    pub samples: Vec<OdeSample>,
    /// `max |k'² + k⁴/4 - 2k - 2C|` over the samples.
    pub drift: f64,
    pub extrema: Vec<Extremum>,
}

impl OdeTrace {
    pub fn maxima(&self) -> impl Iterator<Item = &Extremum> {
        self.extrema.iter().filter(|e| e.kind == ExtremumKind::Maximum)
    }

    pub fn minima(&self) -> impl Iterator<Item = &Extremum> {
        self.extrema.iter().filter(|e| e.kind == ExtremumKind::Minimum)
    }

    /// Distance between the first two maxima, or the first two minima when
    /// fewer than two maxima were seen.
    pub fn measured_period(&self) -> Option<f64> {
        let gap = |v: Vec<&Extremum>| (v.len() >= 2).then(|| v[1].s - v[0].s);
        gap(self.maxima().collect()).or_else(|| gap(self.minima().collect()))
    }

    /// Curvature at arbitrary `s` by cubic Hermite interpolation of `(k, k')`.
    pub fn k_at(&self, s: f64) -> Option<f64> {
        let first = self.samples.first()?;
        let last = self.samples.last()?;
        if s < first.s || s > last.s {
            return None;
        }
        let h = self.samples.get(1).map_or(1.0, |b| b.s - first.s);
        let i = (((s - first.s) / h).floor() as usize).min(self.samples.len() - 2);
        let (a, b) = (&self.samples[i], &self.samples[i + 1]);
        Some(hermite(a.k, a.kp, b.k, b.kp, b.s - a.s, s - a.s))
    }
}

/// Cubic Hermite interpolant on `[0, h]` evaluated at `t`.
pub(crate) fn hermite(y0: f64, d0: f64, y1: f64, d1: f64, h: f64, t: f64) -> f64 {
    let u = t / h;
    let u2 = u * u;
    let u3 = u2 * u;
    (2.0 * u3 - 3.0 * u2 + 1.0) * y0 + (u3 - 2.0 * u2 + u) * h * d0 + (-2.0 * u3 + 3.0 * u2) * y1 + (u3 - u2) * h * d1
}

fn rk4_pair(k: f64, kp: f64, h: f64) -> (f64, f64) {
    let f = curvature_acceleration;
    let (k1, p1) = (kp, f(k));
    let (k2, p2) = (kp + 0.5 * h * p1, f(k + 0.5 * h * k1));
    let (k3, p3) = (kp + 0.5 * h * p2, f(k + 0.5 * h * k2));
    let (k4, p4) = (kp + h * p3, f(k + h * k3));
    (
        k + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4),
        kp + h / 6.0 * (p1 + 2.0 * p2 + 2.0 * p3 + p4),
    )
}

/// Integrates from `(k0, k0prime)` at `s = 0` to `s_end` with uniform steps no
/// longer than `step`. `c` is only used to measure the first-integral drift.
pub fn integrate_ode(c: f64, k0: f64, k0prime: f64, s_end: f64, step: f64) -> OdeTrace {
    assert!(step > 0.0 && s_end > 0.0, "step and s_end must be positive");
    let n = (s_end / step).ceil().max(1.0) as usize;
    let h = s_end / n as f64;
    let mut samples = Vec::with_capacity(n + 1);
    let (mut k, mut kp) = (k0, k0prime);
    samples.push(OdeSample { s: 0.0, k, kp });
    for i in 1..=n {
        (k, kp) = rk4_pair(k, kp, h);
        samples.push(OdeSample { s: i as f64 * h, k, kp });
    }
    let drift = samples
        .iter()
        .map(|p| first_integral_residual(c, p.k, p.kp).abs())
        .fold(0.0, f64::max);
    let extrema = locate_extrema(&samples);
    OdeTrace {
        c,
        step: h,
        samples,
        drift,
        extrema,
    }
}

fn locate_extrema(samples: &[OdeSample]) -> Vec<Extremum> {
    let mut out = Vec::new();
    for w in samples.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.kp * b.kp >= 0.0 {
            continue;
        }
        let h = b.s - a.s;
        let da = curvature_acceleration(a.k);
        let db = curvature_acceleration(b.k);
        let kp_at = |t: f64| hermite(a.kp, da, b.kp, db, h, t);
        let (mut lo, mut hi) = (0.0, h);
        let lo_sign = a.kp.signum();
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if kp_at(mid).signum() == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = 0.5 * (lo + hi);
        out.push(Extremum {
            s: a.s + t,
            k: hermite(a.k, a.kp, b.k, b.kp, h, t),
            kind: if a.kp > 0.0 {
                ExtremumKind::Maximum
            } else {
                ExtremumKind::Minimum
            },
        });
    }
    out
}

/// Curvature together with the moving frame: tangent angle and position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameState {
    pub k: f64,
    pub kp: f64,
    pub theta: f64,
    pub x: f64,
    pub y: f64,
}

impl FrameState {
    fn axpy(&self, h: f64, d: &FrameState) -> FrameState {
        FrameState {
            k: self.k + h * d.k,
            kp: self.kp + h * d.kp,
            theta: self.theta + h * d.theta,
            x: self.x + h * d.x,
            y: self.y + h * d.y,
        }
    }

    fn derivative(&self) -> FrameState {
        FrameState {
            k: self.kp,
            kp: curvature_acceleration(self.k),
            theta: self.k,
            x: self.theta.cos(),
            y: self.theta.sin(),
        }
    }

    /// One RK4 step of the full frame system.
    pub fn step(&self, h: f64) -> FrameState {
        let d1 = self.derivative();
        let d2 = self.axpy(0.5 * h, &d1).derivative();
        let d3 = self.axpy(0.5 * h, &d2).derivative();
        let d4 = self.axpy(h, &d3).derivative();
        FrameState {
            k: self.k + h / 6.0 * (d1.k + 2.0 * d2.k + 2.0 * d3.k + d4.k),
            kp: self.kp + h / 6.0 * (d1.kp + 2.0 * d2.kp + 2.0 * d3.kp + d4.kp),
            theta: self.theta + h / 6.0 * (d1.theta + 2.0 * d2.theta + 2.0 * d3.theta + d4.theta),
            x: self.x + h / 6.0 * (d1.x + 2.0 * d2.x + 2.0 * d3.x + d4.x),
            y: self.y + h / 6.0 * (d1.y + 2.0 * d2.y + 2.0 * d3.y + d4.y),
        }
    }

    /// Advances by `length` using substeps no longer than `max_step`.
    pub fn advance(&self, length: f64, max_step: f64) -> FrameState {
        if length == 0.0 {
            return *self;
        }
        let m = (length.abs() / max_step).ceil().max(1.0) as usize;
        let h = length / m as f64;
        (0..m).fold(*self, |st, _| st.step(h))
    }
}

/// Frame states at `n_intervals + 1` uniform nodes on `[0, length]`, each
/// interval subdivided into RK4 steps no longer than `max_step`.
pub fn integrate_frame(start: FrameState, length: f64, n_intervals: usize, max_step: f64) -> Vec<FrameState> {
    let h = length / n_intervals as f64;
    let mut out = Vec::with_capacity(n_intervals + 1);
    let mut st = start;
    out.push(st);
    for _ in 0..n_intervals {
        st = st.advance(h, max_step);
        out.push(st);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::{CBRT_2, C_MIN};

    #[test]
    fn constant_solution_stays_put() {
        let tr = integrate_ode(C_MIN, CBRT_2, 0.0, 10.0, 1e-3);
        for p in &tr.samples {
            assert!((p.k - CBRT_2).abs() < 1e-9);
        }
        assert!(tr.extrema.is_empty());
    }

    #[test]
    fn extrema_alternate() {
        let tr = integrate_ode(1.0, 0.0, -(2.0f64).sqrt(), 20.0, 1e-3);
        assert!(tr.extrema.len() >= 4);
        for w in tr.extrema.windows(2) {
            assert_ne!(w[0].kind, w[1].kind);
        }
    }

    #[test]
    fn frame_advance_matches_uniform_stepping() {
        let st = FrameState {
            k: 0.0,
            kp: -1.0,
            theta: 0.0,
            x: 0.0,
            y: 0.0,
        };
        let a = st.advance(1.0, 1e-3);
        let b = integrate_frame(st, 1.0, 10, 1e-3);
        let last = b.last().unwrap();
        assert!((a.x - last.x).abs() < 1e-12 && (a.theta - last.theta).abs() < 1e-12);
    }
}
