//! Smooth closed critical curves made of `n` identical periods, and the
//! surgeries showing they are not minimizers of `E + A`.
//!
//! A period of `k` turns the tangent by `∫_0^T k ds`; the curve closes after
//! `n` periods when that equals `2π/n`. The curve is started at a curvature
//! maximum placed so that the optimality center `Q` is the origin.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::curvegeom::{self, PlanarCurve, Point, ShapeMetrics};
use crate::drop::{apex_center, outward_normal, FRAME_STEP};
use crate::elastica::{self, integrate_frame, FrameState};
use crate::error::{Error, Result};
use crate::quadrature::simpson_uniform;
use crate::quartic::{C_MIN, EPS_DEGENERATE};

/// Grid intervals over the whole closed curve.
pub const CRITICAL_INTERVALS: usize = 4096;

/// Frame states on a uniform arc-length grid, with exact evaluation in
/// between by further RK4 integration from the nearest node.
#[derive(Debug, Clone)]
pub struct FrameCurve {
    pub c: f64,
    pub length: f64,
    pub states: Vec<FrameState>,
}

impl FrameCurve {
    pub fn integrate(c: f64, start: FrameState, length: f64, intervals: usize) -> Self {
        Self {
            c,
            length,
            states: integrate_frame(start, length, intervals, FRAME_STEP),
        }
    }

    pub fn spacing(&self) -> f64 {
        self.length / (self.states.len() - 1) as f64
    }

    /// State at arc length `s`. Values beyond `length` wrap around a closed
    /// curve, adding `2π` to the tangent angle per lap.
    pub fn state_at(&self, s: f64) -> FrameState {
        let laps = (s / self.length).floor();
        let local = s - laps * self.length;
        let h = self.spacing();
        let i = ((local / h).floor() as usize).min(self.states.len() - 2);
        let mut st = self.states[i].advance(local - i as f64 * h, FRAME_STEP);
        st.theta += laps * TAU;
        st
    }

    pub fn to_planar(&self) -> PlanarCurve {
        PlanarCurve::from_samples(
            self.length,
            self.states.iter().map(|s| Point::new(s.x, s.y)).collect(),
            self.states.iter().map(|s| s.theta).collect(),
            self.states.iter().map(|s| s.k).collect(),
        )
    }

    /// `m + 1` uniform samples on `[s0, s1]`.
    pub fn sample(&self, s0: f64, s1: f64, m: usize) -> Vec<FrameState> {
        let h = (s1 - s0) / m as f64;
        (0..=m).map(|j| self.state_at(s0 + j as f64 * h)).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedCritical {
    pub n_periods: u32,
    #[serde(rename = "C")]
    pub c: f64,
    pub period: f64,
    /// `∫_0^T k ds`
    pub period_turning: f64,
    #[serde(rename = "Q")]
    pub q: Point,
    pub closure_gap: f64,
    /// `min QM·ν` over the grid; `≥ 0` for a star-shaped curve about `Q`.
    pub star_margin: f64,
    pub metrics: ShapeMetrics,
    #[serde(skip)]
    pub frame: FrameCurve,
    #[serde(skip)]
    pub curve: PlanarCurve,
}

/// The range of per-period turning observed over a scan of `C`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TurningRange {
    pub c_lo: f64,
    pub c_hi: f64,
    pub min: f64,
    pub max: f64,
}

/// Scans `C ∈ (C_min, c_hi]` on a grid refined near `C_min`.
pub fn turning_range(c_hi: f64, samples: usize) -> Result<TurningRange> {
    let lo = C_MIN + EPS_DEGENERATE;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for i in 0..=samples {
        let t = i as f64 / samples as f64;
        let c = lo + (c_hi - lo) * t * t;
        let v = elastica::period_data(c)?.period_turning;
        min = min.min(v);
        max = max.max(v);
    }
    Ok(TurningRange {
        c_lo: lo,
        c_hi,
        min,
        max,
    })
}

fn period_turning(c: f64) -> Result<f64> {
    Ok(elastica::period_data(c)?.period_turning)
}

/// `C` with per-period turning `2π/n`, by bisection.
pub fn critical_constant(n_periods: u32) -> Result<f64> {
    if !(1..=3).contains(&n_periods) {
        return Err(Error::Domain(format!("n_periods must be 1, 2 or 3, got {n_periods}")));
    }
    let target = TAU / n_periods as f64;
    let mut lo = C_MIN + EPS_DEGENERATE;
    let infeasible = |why: &str| -> Result<f64> {
        let range = turning_range(100.0, 400)?;
        Err(Error::Infeasible(format!(
            "no C gives per-period turning 2π/{n_periods} = {target:.12} ({why}); \
             observed turning range [{:.9}, {:.9}] over C ∈ [{:.6}, {}]",
            range.min, range.max, range.c_lo, range.c_hi
        )))
    };
    if period_turning(lo)? < target {
        return infeasible("the turning never reaches the target");
    }
    let mut hi = 1.0;
    while period_turning(hi)? > target {
        lo = hi;
        hi *= 2.0;
        if hi > 1e6 {
            return infeasible("the turning stays above the target");
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if period_turning(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Frame started at the curvature maximum `k_M` with tangent `π/2` at
/// `(k_M²/2, 0)`, so the apex center is the origin.
fn apex_start(k_max: f64) -> FrameState {
    FrameState {
        k: k_max,
        kp: 0.0,
        theta: FRAC_PI_2,
        x: 0.5 * k_max * k_max,
        y: 0.0,
    }
}

fn assemble(n_periods: u32, c: f64, frame: FrameCurve, period: f64, period_turning: f64) -> Result<ClosedCritical> {
    let curve = frame.to_planar();
    let s0 = frame.states[0];
    let q = apex_center(Point::new(s0.x, s0.y), s0.k, s0.theta);
    let star_margin = frame
        .states
        .iter()
        .map(|s| (Point::new(s.x, s.y) - q).dot(outward_normal(s.theta)))
        .fold(f64::INFINITY, f64::min);
    let metrics = curvegeom::metrics(&curve)?;
    Ok(ClosedCritical {
        n_periods,
        c,
        period,
        period_turning,
        q,
        closure_gap: curve.closure_gap(),
        star_margin,
        metrics,
        frame,
        curve,
    })
}

pub fn solve_closed_critical(n_periods: u32) -> Result<ClosedCritical> {
    let c = critical_constant(n_periods)?;
    let pd = elastica::period_data(c)?;
    let length = n_periods as f64 * pd.period;
    let frame = FrameCurve::integrate(c, apex_start(pd.roots.k_max), length, CRITICAL_INTERVALS);
    assemble(n_periods, c, frame, pd.period, pd.period_turning)
}

/// The stationary disc `k ≡ 2^(1/3)` in the same representation; it has no
/// distinguished apex.
pub fn constant_disc() -> Result<ClosedCritical> {
    let k = crate::quartic::CBRT_2;
    let frame = FrameCurve::integrate(C_MIN, apex_start(k), TAU / k, CRITICAL_INTERVALS);
    assemble(1, C_MIN, frame, f64::INFINITY, TAU)
}

/// An open arc of the competitor, on its own uniform grid.
#[derive(Debug, Clone, Serialize)]
pub struct Arc {
    pub length: f64,
    pub points: Vec<Point>,
    pub thetas: Vec<f64>,
    pub curvatures: Vec<f64>,
}

impl Arc {
    fn from_states(length: f64, states: &[FrameState]) -> Self {
        Self {
            length,
            points: states.iter().map(|s| Point::new(s.x, s.y)).collect(),
            thetas: states.iter().map(|s| s.theta).collect(),
            curvatures: states.iter().map(|s| s.k).collect(),
        }
    }

    fn spacing(&self) -> f64 {
        self.length / (self.points.len() - 1) as f64
    }

    pub fn energy(&self) -> f64 {
        let v: Vec<f64> = self.curvatures.iter().map(|k| 0.5 * k * k).collect();
        simpson_uniform(&v, self.spacing())
    }

    /// `½∫(x sin θ - y cos θ) ds` along the arc.
    pub fn area_contribution(&self) -> f64 {
        let v: Vec<f64> = self
            .points
            .iter()
            .zip(&self.thetas)
            .map(|(p, t)| p.x * t.sin() - p.y * t.cos())
            .collect();
        0.5 * simpson_uniform(&v, self.spacing())
    }
}

/// A piecewise-smooth competitor whose arcs meet at cusps.
#[derive(Debug, Clone, Serialize)]
pub struct Competitor {
    pub arcs: Vec<Arc>,
}

impl Competitor {
    pub fn energy(&self) -> f64 {
        self.arcs.iter().map(Arc::energy).sum()
    }

    pub fn area(&self) -> f64 {
        self.arcs.iter().map(Arc::area_contribution).sum()
    }

    pub fn length(&self) -> f64 {
        self.arcs.iter().map(|a| a.length).sum()
    }

    /// All arc samples in traversal order, for export; the spacing is only
    /// approximately uniform across joints.
    pub fn joined(&self) -> PlanarCurve {
        let mut pts = vec![];
        let mut th = vec![];
        let mut ks = vec![];
        for (i, a) in self.arcs.iter().enumerate() {
            let skip = usize::from(i > 0);
            pts.extend_from_slice(&a.points[skip..]);
            th.extend_from_slice(&a.thetas[skip..]);
            ks.extend_from_slice(&a.curvatures[skip..]);
        }
        PlanarCurve::from_samples(self.length(), pts, th, ks)
    }
}

/// Outcome of a surgery: the cut parameters and the change in `E` and `A`.
#[derive(Debug, Clone, Serialize)]
pub struct Surgery {
    pub kind: SurgeryKind,
    /// Arc length of the distinguished apex `l`.
    pub apex: f64,
    /// Cap half-length `a`.
    pub a: f64,
    #[serde(rename = "dE")]
    pub d_energy: f64,
    #[serde(rename = "dA")]
    pub d_area: f64,
    #[serde(skip)]
    pub competitor: Competitor,
}

impl Surgery {
    pub fn d_total(&self) -> f64 {
        self.d_energy + self.d_area
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurgeryKind {
    CutAndReflect,
    CenterSymmetrize,
}

fn require_apex(frame: &FrameCurve) -> Result<()> {
    let (lo, hi) = frame
        .states
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), s| (a.min(s.k), b.max(s.k)));
    if hi - lo < 1e-9 {
        return Err(Error::Geometry(format!(
            "curvature is constant (range {:.3e}); there is no distinguished apex",
            hi - lo
        )));
    }
    Ok(())
}

/// Finds `s ∈ (l - window, l)` with `θ(l) - θ(s) = gap`, scanning grid nodes
/// backwards from `l` and refining by Newton on the exact state.
fn solve_angle_gap(frame: &FrameCurve, l: f64, window: f64, gap: f64) -> Result<f64> {
    let theta_l = frame.state_at(l).theta;
    let g = |s: f64| theta_l - frame.state_at(s).theta - gap;
    let h = frame.spacing();
    let steps = (window / h).floor() as usize;
    let mut prev = (l, g(l));
    for j in 1..=steps {
        let s = l - j as f64 * h;
        let v = g(s);
        if v.signum() != prev.1.signum() || v == 0.0 {
            // linear interpolation, then Newton with g'(s) = -k(s)
            let mut x = prev.0 - prev.1 * (s - prev.0) / (v - prev.1);
            for _ in 0..30 {
                let st = frame.state_at(x);
                let r = theta_l - st.theta - gap;
                if st.k == 0.0 {
                    break;
                }
                let dx = r / st.k;
                x += dx;
                if dx.abs() <= 1e-14 * frame.length {
                    break;
                }
            }
            if x > l - window && x < l {
                return Ok(x);
            }
            break;
        }
        prev = (s, v);
    }
    Err(Error::Geometry(format!(
        "cap parameter not found: θ(l) - θ(s) never reaches {gap:.6} for s in (l - {window:.6}, l)"
    )))
}

fn reflect_across(p: Point, a: Point, u: Point) -> Point {
    let d = p - a;
    a + u * (2.0 * d.dot(u)) - d
}

fn resample_count(length: f64, h: f64) -> usize {
    (((length / h).ceil() as usize).max(16) + 1) & !1
}

/// Cut-and-reflect: the cap around the apex `l = T` between the points where
/// the tangent is parallel to `Qγ(l)` is reflected across its chord.
pub fn cut_and_reflect(crit: &ClosedCritical) -> Result<Surgery> {
    let frame = &crit.frame;
    require_apex(frame)?;
    let l = crit.period.min(frame.length / 2.0);
    let s_a = solve_angle_gap(frame, l, 0.5 * crit.period.min(frame.length), FRAC_PI_2)?;
    let a = l - s_a;
    let s_b = l + a;
    let h = frame.length / CRITICAL_INTERVALS as f64;

    let m_cap = resample_count(2.0 * a, h);
    let cap = frame.sample(s_a, s_b, m_cap);
    let pa = Point::new(cap[0].x, cap[0].y);
    let pb = Point::new(cap[m_cap].x, cap[m_cap].y);
    let chord = pb - pa;
    let u = chord * (1.0 / chord.norm());
    let phi = u.y.atan2(u.x);
    let reflected: Vec<FrameState> = cap
        .iter()
        .map(|s| {
            let p = reflect_across(Point::new(s.x, s.y), pa, u);
            FrameState {
                k: -s.k,
                kp: -s.kp,
                theta: 2.0 * phi - s.theta,
                x: p.x,
                y: p.y,
            }
        })
        .collect();

    let rest_len = frame.length - 2.0 * a;
    let m_rest = resample_count(rest_len, h);
    let rest = frame.sample(s_b, s_a + frame.length, m_rest);
    // The competitor shares the rest of the curve with the original, so the
    // changes are those of the cap alone, on identical samples.
    let original_cap = Arc::from_states(2.0 * a, &cap);
    let new_cap = Arc::from_states(2.0 * a, &reflected);
    let d_energy = new_cap.energy() - original_cap.energy();
    let d_area = new_cap.area_contribution() - original_cap.area_contribution();
    let competitor = Competitor {
        arcs: vec![Arc::from_states(rest_len, &rest), new_cap],
    };
    Ok(Surgery {
        kind: SurgeryKind::CutAndReflect,
        apex: l,
        a,
        d_energy,
        d_area,
        competitor,
    })
}

/// Center-symmetrization of the branch `[l - a, l]` through the midpoint of
/// its ends, where `a` is the first offset at which the tangent has turned
/// by `π` (normal parallel to `Qγ(l)`). Works on any frame curve with a
/// curvature maximum at `l`; the rest of the curve is kept.
pub fn center_symmetrize(frame: &FrameCurve, l: f64, window: f64, closed: bool) -> Result<Surgery> {
    require_apex(frame)?;
    let s0 = solve_angle_gap(frame, l, window, PI)?;
    let a = l - s0;
    let h = frame.spacing();
    let m = resample_count(a, h);
    let branch = frame.sample(s0, l, m);
    let p0 = Point::new(branch[0].x, branch[0].y);
    let p1 = Point::new(branch[m].x, branch[m].y);
    let center = (p0 + p1) * 0.5;
    let mirrored: Vec<FrameState> = branch
        .iter()
        .rev()
        .map(|s| {
            let p = center * 2.0 - Point::new(s.x, s.y);
            FrameState {
                k: s.k,
                kp: -s.kp,
                theta: s.theta,
                x: p.x,
                y: p.y,
            }
        })
        .collect();
    let original = Arc::from_states(a, &branch);
    let replaced = Arc::from_states(a, &mirrored);
    let mut arcs = vec![];
    let rest_len = frame.length - a;
    if closed {
        let m_rest = resample_count(rest_len, h);
        arcs.push(Arc::from_states(rest_len, &frame.sample(l, s0 + frame.length, m_rest)));
    }
    arcs.push(replaced.clone());
    let competitor = Competitor { arcs };
    Ok(Surgery {
        kind: SurgeryKind::CenterSymmetrize,
        apex: l,
        a,
        d_energy: replaced.energy() - original.energy(),
        d_area: replaced.area_contribution() - original.area_contribution(),
        competitor,
    })
}

/// The surgery that applies to `crit`: cut-and-reflect for two or three
/// periods, center-symmetrization for one.
pub fn surgery_compare(crit: &ClosedCritical) -> Result<Surgery> {
    if crit.n_periods >= 2 {
        return cut_and_reflect(crit);
    }
    require_apex(&crit.frame)?;
    let l = crit.frame.length;
    let mut s = center_symmetrize(&crit.frame, l, l, true)?;
    s.d_energy = s.competitor.energy() - crit.metrics.energy;
    s.d_area = s.competitor.area() - crit.metrics.area;
    Ok(s)
}
