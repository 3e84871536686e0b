//! The optimal drop: a closed curve with one cusp whose smooth part solves
//! `k'' = -k³/2 + 1` from `k(0) = 0`, `k'(0) = -√(2C)`.
//!
//! `C` is found by bisection on the half-arc turning `I(C) = ∫_0^{s_M} k ds`
//! so that `I(C) = π/2`; the curve is integrated up to the curvature maximum
//! `s_M` and completed by reflection across the horizontal line through it.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::curvegeom::{self, PlanarCurve, Point, ShapeMetrics};
use crate::elastica::{self, integrate_frame, FrameState};
use crate::error::{Error, Result};
use crate::quartic;

/// Intervals on `[0, s_M]`; the full drop has twice as many.
pub const HALF_INTERVALS: usize = 2048;
/// Largest RK4 substep used when integrating the frame.
pub const FRAME_STEP: f64 = 1e-4;
/// Fraction of arc length excluded around the cusp in residual reports.
pub const CORNER_EXCLUSION: f64 = 0.01;
/// Upper bound on the drop length.
pub const LENGTH_BOUND: f64 = 146.0;

/// Half-arc turning `I(C)` from the period integrals.
pub fn turning(c: f64) -> Result<f64> {
    elastica::period_data(c)?
        .turning()
        .ok_or_else(|| Error::Domain(format!("half-arc turning needs C >= 0, got {c}")))
}

/// Sup-norm residuals of the four optimality conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalityResiduals {
    /// `k'' + k³/2 - 1` with `k''` from second differences.
    pub b1: f64,
    /// `k'² - P_C(k)`
    pub b2: f64,
    /// `|QM|² - 2k - 2C`
    pub b3: f64,
    /// `QM·ν - k²/2`
    pub b4: f64,
}

impl OptimalityResiduals {
    pub fn max(&self) -> f64 {
        self.b1.max(self.b2).max(self.b3).max(self.b4)
    }
}

/// A drop curve together with the curvature derivative along it.
#[derive(Debug, Clone)]
pub struct DropCurve {
    pub c: f64,
    pub curve: PlanarCurve,
    /// `k'` at every grid node.
    pub kprime: Vec<f64>,
    /// Index of the curvature maximum (the reflection point).
    pub apex: usize,
}

impl DropCurve {
    pub fn apex_point(&self) -> Point {
        self.curve.points[self.apex]
    }

    pub fn apex_theta(&self) -> f64 {
        self.curve.thetas[self.apex]
    }

    pub fn apex_curvature(&self) -> f64 {
        self.curve.curvatures[self.apex]
    }
}

/// Outward normal `(sin θ, -cos θ)` of a counter-clockwise curve.
pub fn outward_normal(theta: f64) -> Point {
    Point::new(theta.sin(), -theta.cos())
}

/// The center `Q = M - ½k²ν` built from a point `M` with curvature `k` and
/// tangent angle `theta`.
pub fn apex_center(m: Point, k: f64, theta: f64) -> Point {
    m - outward_normal(theta) * (0.5 * k * k)
}

/// Integrates the half arc `[0, s_M]` and reflects it. `s_M` is the arc
/// length to the first curvature maximum, computed by quadrature.
pub fn build_drop_curve(c: f64) -> Result<DropCurve> {
    if c.is_nan() || c <= 0.0 {
        return Err(Error::Domain(format!("drop curves need C > 0, got {c}")));
    }
    let pd = elastica::period_data(c)?;
    let s_max = pd.half_arc.expect("C > 0 has a half arc").s_max;
    let start = FrameState {
        k: 0.0,
        kp: -(2.0 * c).sqrt(),
        theta: 0.0,
        x: 0.0,
        y: 0.0,
    };
    let half = integrate_frame(start, s_max, HALF_INTERVALS, FRAME_STEP);
    let n = HALF_INTERVALS;
    let apex = half[n];
    let mut points = Vec::with_capacity(2 * n + 1);
    let mut thetas = Vec::with_capacity(2 * n + 1);
    let mut ks = Vec::with_capacity(2 * n + 1);
    let mut kps = Vec::with_capacity(2 * n + 1);
    for st in &half {
        points.push(Point::new(st.x, st.y));
        thetas.push(st.theta);
        ks.push(st.k);
        kps.push(st.kp);
    }
    for j in 1..=n {
        let st = &half[n - j];
        points.push(Point::new(st.x, 2.0 * apex.y - st.y));
        thetas.push(PI - st.theta);
        ks.push(st.k);
        kps.push(-st.kp);
    }
    Ok(DropCurve {
        c,
        curve: PlanarCurve::from_samples(2.0 * s_max, points, thetas, ks),
        kprime: kps,
        apex: n,
    })
}

/// Residuals of the optimality conditions on the grid nodes whose arc length
/// is at least `exclusion · L` away from both ends.
pub fn optimality_residuals(
    curve: &PlanarCurve,
    kprime: &[f64],
    c: f64,
    q: Point,
    exclusion: f64,
) -> OptimalityResiduals {
    let n = curve.intervals();
    let h = curve.spacing();
    let skip = ((exclusion * n as f64).ceil() as usize).max(1);
    let k = &curve.curvatures;
    let mut r = OptimalityResiduals {
        b1: 0.0,
        b2: 0.0,
        b3: 0.0,
        b4: 0.0,
    };
    for i in skip..=n.saturating_sub(skip) {
        let ki = k[i];
        if i > 0 && i < n {
            let kpp = (k[i + 1] - 2.0 * ki + k[i - 1]) / (h * h);
            r.b1 = r.b1.max((kpp - elastica::ode::curvature_acceleration(ki)).abs());
        }
        r.b2 = r.b2.max(elastica::ode::first_integral_residual(c, ki, kprime[i]).abs());
        let qm = curve.points[i] - q;
        r.b3 = r.b3.max((qm.norm_sq() - 2.0 * ki - 2.0 * c).abs());
        r.b4 =
            r.b4.max((qm.dot(outward_normal(curve.thetas[i])) - 0.5 * ki * ki).abs());
    }
    r
}

#[derive(Debug, Clone, Serialize)]
pub struct DropSolution {
    #[serde(rename = "C_star")]
    pub c_star: f64,
    pub s_m: f64,
    #[serde(rename = "s_M")]
    pub s_max: f64,
    #[serde(rename = "k_m")]
    pub k_min: f64,
    #[serde(rename = "k_M")]
    pub k_max: f64,
    #[serde(rename = "E")]
    pub energy: f64,
    #[serde(rename = "A")]
    pub area: f64,
    #[serde(rename = "E_plus_A")]
    pub energy_plus_area: f64,
    #[serde(rename = "Q")]
    pub q: Point,
    /// `|θ(s_M) - π/2|` measured on the integrated frame.
    pub turning_residual: f64,
    /// Distance between the quadrature `s_M` and the first ODE curvature
    /// maximum.
    pub s_max_ode_gap: f64,
    pub closure_gap: f64,
    pub residuals: OptimalityResiduals,
    pub metrics: ShapeMetrics,
    #[serde(skip)]
    pub drop: DropCurve,
}

impl DropSolution {
    pub fn curve(&self) -> &PlanarCurve {
        &self.drop.curve
    }
}

/// Bisection on `C` until the bracket is narrower than `tol`.
pub fn solve_constant(tol: f64) -> Result<f64> {
    let target = FRAC_PI_2;
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut grown = 0;
    while turning(hi)? >= target {
        lo = hi;
        hi *= 2.0;
        grown += 1;
        if grown > 60 {
            return Err(Error::Bracket(format!("turning stayed above π/2 up to C = {hi}")));
        }
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if turning(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Shoots on `C` and builds the verified drop.
pub fn solve_drop(tol: f64) -> Result<DropSolution> {
    if !(tol > 0.0 && tol <= 1e-8) {
        return Err(Error::Domain(format!("tolerance must lie in (0, 1e-8], got {tol}")));
    }
    let c = solve_constant(tol)?;
    solution_at(c)
}

/// Builds and measures the drop at a given `C` (normally the solved one).
pub fn solution_at(c: f64) -> Result<DropSolution> {
    let pd = elastica::period_data(c)?;
    let half = pd.half_arc.ok_or_else(|| Error::Domain(format!("C = {c} < 0")))?;
    let drop = build_drop_curve(c)?;
    let curve = &drop.curve;
    let energy = open_energy(curve);
    let area = curvegeom::tangential_area(curve);
    let metrics = ShapeMetrics::from_parts(energy, area, curve.length, curve.radius_about(Point::ORIGIN));
    let q = apex_center(drop.apex_point(), drop.apex_curvature(), drop.apex_theta());
    let residuals = optimality_residuals(curve, &drop.kprime, c, q, CORNER_EXCLUSION);
    let trace = elastica::integrate_ode(c, 0.0, -(2.0 * c).sqrt(), 1.2 * half.s_max, FRAME_STEP);
    let s_ode = trace.maxima().next().map_or(f64::INFINITY, |e| e.s);
    Ok(DropSolution {
        c_star: c,
        s_m: half.s_min,
        s_max: half.s_max,
        k_min: pd.roots.k_min,
        k_max: pd.roots.k_max,
        energy,
        area,
        energy_plus_area: energy + area,
        q,
        turning_residual: (drop.apex_theta() - FRAC_PI_2).abs(),
        s_max_ode_gap: (s_ode - half.s_max).abs(),
        closure_gap: curve.closure_gap(),
        residuals,
        metrics,
        drop,
    })
}

fn open_energy(curve: &PlanarCurve) -> f64 {
    let v: Vec<f64> = curve.curvatures.iter().map(|k| 0.5 * k * k).collect();
    crate::quadrature::simpson_uniform(&v, curve.spacing())
}

/// Residuals of the solved drop, excluding the arc near the cusp.
pub fn verify_optimality(sol: &DropSolution) -> OptimalityResiduals {
    optimality_residuals(sol.curve(), &sol.drop.kprime, sol.c_star, sol.q, CORNER_EXCLUSION)
}

/// The bounds the drop must satisfy, each with the values it compares.
#[derive(Debug, Clone, Serialize)]
pub struct DropBounds {
    pub energy_plus_area: f64,
    /// `E + A > π`
    pub exceeds_pi: bool,
    /// `E + A > 3π·2^(-5/3)`, half the disc value.
    pub exceeds_half_disc: bool,
    /// `2(E + A) > 3π·2^(-2/3)`
    pub two_drops_exceed_disc: bool,
    pub length: f64,
    /// `2 s_M <= 146`
    pub length_within_bound: bool,
    /// Largest distance from the cusp.
    pub corner_radius: f64,
    /// `L <= 8 R² E`
    pub length_within_radius_bound: bool,
    pub h_quantity: f64,
    /// `3k_M² + 2k_m k_M + 3k_m² >= 22/3`
    pub h_quantity_bound: bool,
    /// `E >= (π/4)√(22/3)`
    pub energy_bound: bool,
}

impl DropBounds {
    pub fn all_hold(&self) -> bool {
        self.exceeds_pi
            && self.exceeds_half_disc
            && self.two_drops_exceed_disc
            && self.length_within_bound
            && self.length_within_radius_bound
            && self.h_quantity_bound
            && self.energy_bound
    }
}

pub fn drop_bounds_report(sol: &DropSolution) -> DropBounds {
    let disc = curvegeom::disc_energy_plus_area();
    let ea = sol.energy_plus_area;
    let length = sol.curve().length;
    let corner = sol.curve().points[0];
    let radius = sol.curve().radius_about(corner);
    let h = quartic::roots(sol.c_star).map(|r| r.h_quantity()).unwrap_or(f64::NAN);
    DropBounds {
        energy_plus_area: ea,
        exceeds_pi: ea > PI,
        exceeds_half_disc: ea > 0.5 * disc,
        two_drops_exceed_disc: 2.0 * ea > disc,
        length,
        length_within_bound: length <= LENGTH_BOUND,
        corner_radius: radius,
        length_within_radius_bound: length <= 8.0 * radius * radius * sol.energy,
        h_quantity: h,
        h_quantity_bound: h >= 22.0 / 3.0,
        energy_bound: sol.energy >= elastica::period_energy_lower_bound(),
    }
}

/// Number of sign changes of `I(C) - π/2` on `C = 0.01·2^i`, `i = 0..=20`.
pub fn uniqueness_probe() -> Result<usize> {
    let values = (0..=20)
        .map(|i| turning(0.01 * 2f64.powi(i)).map(|t| t - FRAC_PI_2))
        .collect::<Result<Vec<_>>>()?;
    Ok(values.windows(2).filter(|w| w[0].signum() != w[1].signum()).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::{CBRT_2, C_MIN};
    use std::f64::consts::TAU;

    #[test]
    fn circle_satisfies_optimality_at_c_min() {
        let k = CBRT_2;
        let r = 1.0 / k;
        assert!((r - 0.5 * 2f64.powf(2.0 / 3.0)).abs() < 1e-15);
        let q = Point::new(0.3, -0.2);
        let n = 512;
        let h = TAU * r / n as f64;
        let mut pts = vec![];
        let mut th = vec![];
        for i in 0..=n {
            let phi = i as f64 * h / r;
            pts.push(q + Point::polar(phi - FRAC_PI_2) * r);
            th.push(phi);
        }
        let curve = PlanarCurve::from_samples(TAU * r, pts, th, vec![k; n + 1]);
        let res = optimality_residuals(&curve, &vec![0.0; n + 1], C_MIN, q, 0.0);
        assert!(res.b1 <= 1e-12 && res.b3 <= 1e-12 && res.b4 <= 1e-12, "{res:?}");
        assert!(res.b2 <= 1e-12);
    }

    #[test]
    fn solved_drop_in_one_pass() {
        let sol = solve_drop(1e-10).unwrap();
        // energy from the plain RK4 trace: E = ∫_0^{s_M} k² ds by Simpson
        let tr = elastica::integrate_ode(sol.c_star, 0.0, -(2.0 * sol.c_star).sqrt(), sol.s_max, 1e-4);
        let k2: Vec<f64> = tr.samples.iter().map(|p| p.k * p.k).collect();
        let e_ode = crate::quadrature::simpson_uniform(&k2, tr.step);
        assert!((sol.energy - e_ode).abs() <= 1e-9, "{} vs {e_ode}", sol.energy);
        assert!((sol.energy_plus_area - 1.5 * e_ode).abs() <= 1e-6);
        assert!((2.0 * sol.area - sol.energy).abs() <= 1e-6 * sol.energy);
        assert!(sol.turning_residual <= 1e-10, "{}", sol.turning_residual);
        assert!(sol.closure_gap <= 1e-6 * sol.curve().length);
        assert!((sol.curve().total_turning() - PI).abs() <= 1e-8);
        assert!(sol.q.y.abs() <= 1e-8);
        assert!(sol.k_min < 0.0 && sol.k_max > CBRT_2);
        let r = verify_optimality(&sol);
        assert!(r.b1 <= 1e-5 && r.b2 <= 1e-8 && r.b3 <= 1e-8 && r.b4 <= 1e-8, "{r:?}");
        assert!(drop_bounds_report(&sol).all_hold());
        assert!(sol.s_max_ode_gap < 1e-8, "{}", sol.s_max_ode_gap);
    }

    #[test]
    fn off_root_drop_does_not_close() {
        let c_star = solve_constant(1e-10).unwrap();
        let d = build_drop_curve(0.5 * c_star).unwrap();
        assert!(d.curve.closure_gap() > 1e-6 * d.curve.length);
        assert!(build_drop_curve(0.0).is_err());
    }

    #[test]
    fn probe_finds_single_crossing() {
        assert_eq!(uniqueness_probe().unwrap(), 1);
    }

    #[test]
    fn tolerance_is_validated() {
        assert!(solve_drop(1e-6).is_err());
        assert!(solve_drop(0.0).is_err());
    }
}
