//! One period of the penalized elastica `k'' = -k³/2 + 1`.
//!
//! Arc-length integrals over a monotone branch of `k` are rewritten as
//! integrals in `u = k` against `du/√P_C(u)`. The integrand has inverse
//! square-root singularities at the roots `k_min`, `k_max`; they are removed
//! by substitution before Gauss–Legendre quadrature:
//!
//! * full interval `[k_min, k_max]`: `u = m + w sin φ`, integrand
//!   `2 f(u)/√q(u)` on `[-π/2, π/2]`;
//! * any other interval: split at the midpoint `m` of the roots and use
//!   `u = k_min + w t²` below it, `u = k_max - w t²` above it, where `w` is the
//!   half-width. Each piece is then smooth in `t`, whether or not its end sits
//!   on a root.

pub mod ode;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{GaussLegendre, DEFAULT_NODES};
use crate::quartic::{self, QuarticRoots};

pub use ode::{integrate_frame, integrate_ode, Extremum, ExtremumKind, FrameState, OdeSample, OdeTrace};

/// Lower bound `(π/4)·√(22/3)` on the energy of one period.
pub fn period_energy_lower_bound() -> f64 {
    std::f64::consts::FRAC_PI_4 * (22.0f64 / 3.0).sqrt()
}

/// Quadrature settings for the singular integrals.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub nodes: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self { nodes: DEFAULT_NODES }
    }
}

/// `∫_lo^hi u^moment / √P_C(u) du` for `k_min <= lo < hi <= k_max`.
pub fn singular_integral(c: f64, moment: u32, lo: f64, hi: f64) -> Result<f64> {
    let r = quartic::roots(c)?;
    singular_integral_with(&r, moment, lo, hi, Quadrature::default())
}

/// As [`singular_integral`] with precomputed roots and an explicit rule size.
pub fn singular_integral_with(r: &QuarticRoots, moment: u32, lo: f64, hi: f64, quad: Quadrature) -> Result<f64> {
    if moment > 4 {
        return Err(Error::Domain(format!("moment {moment} outside 0..=4")));
    }
    let f = |u: f64| u.powi(moment as i32);
    weighted_integral(r, f, lo, hi, quad)
}

/// `∫_lo^hi f(u) / √P_C(u) du` for any smooth `f`.
pub fn weighted_integral<F: Fn(f64) -> f64>(r: &QuarticRoots, f: F, lo: f64, hi: f64, quad: Quadrature) -> Result<f64> {
    let scale = r.k_max.abs().max(r.k_min.abs()).max(1.0);
    let slack = 1e-12 * scale;
    if !(lo.is_finite() && hi.is_finite()) || lo < r.k_min - slack || hi > r.k_max + slack {
        return Err(Error::Domain(format!(
            "interval [{lo}, {hi}] is outside [k_min, k_max] = [{}, {}] for C = {}",
            r.k_min, r.k_max, r.c
        )));
    }
    if lo > hi {
        return Err(Error::Domain(format!("reversed interval [{lo}, {hi}]")));
    }
    let lo = lo.max(r.k_min);
    let hi = hi.min(r.k_max);
    if hi <= lo {
        return Ok(0.0);
    }
    let rule = GaussLegendre::cached(quad.nodes);
    let m = r.midpoint();
    let w = r.half_width();
    if lo == r.k_min && hi == r.k_max {
        let v = rule.integrate(-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2, |phi| {
            let u = m + w * phi.sin();
            2.0 * f(u) / r.cofactor(u).sqrt()
        });
        return Ok(v);
    }
    let sw = w.sqrt();
    let mut total = 0.0;
    if lo < m {
        let b = hi.min(m);
        let ta = ((lo - r.k_min) / w).max(0.0).sqrt();
        let tb = ((b - r.k_min) / w).clamp(0.0, 1.0).sqrt();
        total += rule.integrate(ta, tb, |t| {
            let u = r.k_min + w * t * t;
            4.0 * sw * f(u) / ((r.k_max - u).sqrt() * r.cofactor(u).sqrt())
        });
    }
    if hi > m {
        let a = lo.max(m);
        let ta = ((r.k_max - a) / w).clamp(0.0, 1.0).sqrt();
        let tb = ((r.k_max - hi) / w).max(0.0).sqrt();
        total += rule.integrate(tb, ta, |t| {
            let u = r.k_max - w * t * t;
            4.0 * sw * f(u) / ((u - r.k_min).sqrt() * r.cofactor(u).sqrt())
        });
    }
    Ok(total)
}

/// `∫_{k_m}^{k_M} x² / √((k_M - x)(x - k_m)) dx` in closed form,
/// `(π/2)·(3k_M² + 2k_m k_M + 3k_m²)/4`.
pub fn reference_sqrt_integral(k_min: f64, k_max: f64) -> f64 {
    std::f64::consts::FRAC_PI_2 * (3.0 * k_max * k_max + 2.0 * k_min * k_max + 3.0 * k_min * k_min) / 4.0
}

/// The drop half-arc of an orbit started at `k = 0` with `k' < 0`, defined
/// for `C >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfArc {
    /// Arc length from the start to the first curvature minimum.
    pub s_min: f64,
    /// Arc length from the start to the first curvature maximum.
    pub s_max: f64,
    /// `I(C) = ∫_0^{s_max} k ds = i1 + 2·i2`.
    pub turning: f64,
    /// `∫_0^{k_M} u/√P_C du`
    pub i1: f64,
    /// `∫_{k_m}^0 u/√P_C du`, non-positive.
    pub i2: f64,
}

/// Integrals over one period of `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodData {
    pub c: f64,
    pub roots: QuarticRoots,
    /// Period `T` in arc length.
    pub period: f64,
    /// `∫_0^T k ds`
    pub period_turning: f64,
    /// `½ ∫_0^T k² ds`
    pub energy: f64,
    /// Present when the orbit crosses `k = 0`, i.e. `C >= 0`.
    pub half_arc: Option<HalfArc>,
}

impl PeriodData {
    /// Drop half-arc turning `I(C)`; `None` for `C < 0`.
    pub fn turning(&self) -> Option<f64> {
        self.half_arc.map(|h| h.turning)
    }
}

pub fn period_data(c: f64) -> Result<PeriodData> {
    period_data_with(c, Quadrature::default())
}

pub fn period_data_with(c: f64, quad: Quadrature) -> Result<PeriodData> {
    let r = quartic::roots(c)?;
    let full = |m: u32| singular_integral_with(&r, m, r.k_min, r.k_max, quad);
    let half_period = full(0)?;
    let half_turning = full(1)?;
    let half_energy = full(2)?;
    let half_arc = if c >= 0.0 {
        let zero = 0.0f64.clamp(r.k_min, r.k_max);
        let s_min = singular_integral_with(&r, 0, r.k_min, zero, quad)?;
        let s_rise = singular_integral_with(&r, 0, zero, r.k_max, quad)?;
        let i1 = singular_integral_with(&r, 1, zero, r.k_max, quad)?;
        let i2 = singular_integral_with(&r, 1, r.k_min, zero, quad)?;
        Some(HalfArc {
            s_min,
            s_max: 2.0 * s_min + s_rise,
            turning: i1 + 2.0 * i2,
            i1,
            i2,
        })
    } else {
        None
    };
    Ok(PeriodData {
        c,
        roots: r,
        period: 2.0 * half_period,
        period_turning: 2.0 * half_turning,
        energy: half_energy,
        half_arc,
    })
}

/// `dI/dC` for the drop half-arc turning, from the differentiated integrals
/// of `I₁` and `I₂` after the scaling `u = k_M x` (resp. `u = k_m x`).
///
/// Both integrands behave like `(1 - x)^(-1/2)` at `x = 1`; the substitution
/// `x = 1 - t²` makes them smooth.
pub fn turning_derivative(c: f64) -> Result<f64> {
    if c <= 0.0 {
        return Err(Error::Domain(format!(
            "turning derivative is defined for C > 0 (got {c})"
        )));
    }
    let r = quartic::roots(c)?;
    let rule = GaussLegendre::cached(DEFAULT_NODES);
    // ∫_0^1 6k² x(x-1) / ((k³-2) G(x)^{3/2}) dx with G(x) = P_C(k x)
    let scaled = |k: f64, other: f64| -> f64 {
        let denom = k.powi(3) - 2.0;
        rule.integrate(0.0, 1.0, |t| {
            let x = 1.0 - t * t;
            let g = 0.25 * k.abs() * (k * x - other).abs() * r.cofactor(k * x);
            -12.0 * k * k * x / (denom * g * g.sqrt())
        })
    };
    let d_i1 = scaled(r.k_max, r.k_min);
    let d_i2 = -scaled(r.k_min, r.k_max);
    Ok(d_i1 + 2.0 * d_i2)
}
