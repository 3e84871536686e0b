//! The first-integral polynomial `P_C(X) = -X⁴/4 + 2X + 2C`.
//!
//! Along a solution of `k'' = -k³/2 + 1` the quantity `k'² - P_C(k)` is
//! constant (zero for the matching `C`), so the two real roots of `P_C` are
//! the extreme curvatures of the orbit. Everything downstream that integrates
//! `1/√P_C` needs these roots to full precision and the quadratic cofactor to
//! remove the endpoint singularities.

use serde::Serialize;

use crate::error::{Error, Result};

/// `2^(1/3)`: the constant curvature of the stationary disc and the location
/// of the maximum of `P_C`.
pub const CBRT_2: f64 = 1.259_921_049_894_873_2;

/// Smallest admissible first-integral constant, `-¾·2^(1/3)`. Below it `P_C`
/// is negative everywhere.
pub const C_MIN: f64 = -0.75 * CBRT_2;

/// Distance above [`C_MIN`] below which the double-root regime is rejected.
pub const EPS_DEGENERATE: f64 = 1e-10;

/// Evaluates `P_C(x)` in Horner form.
#[inline]
pub fn evaluate(c: f64, x: f64) -> f64 {
    x * (x * x * (-0.25 * x) + 2.0) + 2.0 * c
}

/// Derivative `P_C'(x) = -x³ + 2`.
#[inline]
pub fn derivative(x: f64) -> f64 {
    2.0 - x * x * x
}

/// Real roots of `P_C` with the deflated quadratic factor.
///
/// `P_C(x) = ¼ (k_max - x)(x - k_min) q(x)` with
/// `q(x) = quad_a x² + quad_b x + quad_c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuarticRoots {
    pub c: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub quad_a: f64,
    pub quad_b: f64,
    pub quad_c: f64,
    /// `k_min + k_max`
    pub sum: f64,
    /// `k_min · k_max`
    pub product: f64,
}

impl QuarticRoots {
    /// The deflated quadratic `q(x)`; strictly positive on `[k_min, k_max]`.
    #[inline]
    pub fn cofactor(&self, x: f64) -> f64 {
        (self.quad_a * x + self.quad_b) * x + self.quad_c
    }

    /// `¼ (k_max - x)(x - k_min) q(x)`, equal to `P_C(x)` up to rounding.
    pub fn factored(&self, x: f64) -> f64 {
        0.25 * (self.k_max - x) * (x - self.k_min) * self.cofactor(x)
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.k_min + self.k_max)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.k_max - self.k_min)
    }

    /// `H = 3k_M² + 2k_m k_M + 3k_m²`, the quantity bounding the period
    /// energy from below.
    pub fn h_quantity(&self) -> f64 {
        3.0 * self.k_max * self.k_max + 2.0 * self.k_min * self.k_max + 3.0 * self.k_min * self.k_min
    }
}

pub(crate) fn check_admissible(c: f64) -> Result<()> {
    if !c.is_finite() || c < C_MIN + EPS_DEGENERATE {
        return Err(Error::Domain(format!(
            "C = {c} is below the admissible range C >= C_min + {EPS_DEGENERATE:e} \
             (C_min = -3/4 * 2^(1/3) = {C_MIN}); otherwise P_C is negative"
        )));
    }
    Ok(())
}

/// Both real roots of `P_C` refined to `|P_C(root)| <= 1e-12`, with the
/// quadratic cofactor obtained by synthetic division.
pub fn roots(c: f64) -> Result<QuarticRoots> {
    check_admissible(c)?;
    let upper = 2.0 + c.max(0.0) + 2.0;
    let lower = -c.max(1.0) - 2.0;
    let k_max = refine_root(c, CBRT_2, upper)?;
    let k_min = refine_root(c, lower, CBRT_2)?;

    // P_C / (x - k_max): cubic b3 x³ + b2 x² + b1 x + b0
    let b3 = -0.25;
    let b2 = k_max * b3;
    let b1 = k_max * b2;
    // cubic / (x - k_min): quadratic c2 x² + c1 x + c0
    let c2 = b3;
    let c1 = b2 + k_min * c2;
    let c0 = b1 + k_min * c1;
    // (x - k_max)(x - k_min) r(x) = ¼ (k_max - x)(x - k_min) (-4 r(x))
    Ok(QuarticRoots {
        c,
        k_min,
        k_max,
        quad_a: -4.0 * c2,
        quad_b: -4.0 * c1,
        quad_c: -4.0 * c0,
        sum: k_min + k_max,
        product: k_min * k_max,
    })
}

/// Safeguarded Newton on a sign-changing bracket of `P_C`.
fn refine_root(c: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut f_lo = evaluate(c, lo);
    let f_hi = evaluate(c, hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket(format!("P_{c} has no sign change on [{lo}, {hi}]")));
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..400 {
        let fx = evaluate(c, x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
        }
        let d = derivative(x);
        let newton = x - fx / d;
        let next = if d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 2.0 * f64::EPSILON * x.abs().max(1e-300) || hi - lo <= 0.0 {
            x = next;
            break;
        }
        x = next;
        if hi - lo <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    // Pick the best of the candidates left in the bracket.
    let best = [x, lo, hi]
        .into_iter()
        .min_by(|a, b| evaluate(c, *a).abs().total_cmp(&evaluate(c, *b).abs()))
        .expect("non-empty");
    Ok(best)
}

/// `(dk_min/dC, dk_max/dC) = (2/(k_min³ - 2), 2/(k_max³ - 2))`, obtained by
/// differentiating `P_C(k(C)) = 0`.
pub fn root_sensitivities(c: f64) -> Result<(f64, f64)> {
    let r = roots(c)?;
    Ok((2.0 / (r.k_min.powi(3) - 2.0), 2.0 / (r.k_max.powi(3) - 2.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate(0.0, 0.0), 0.0);
        assert_eq!(evaluate(0.0, 2.0), 0.0);
        let v = evaluate(1.0, 7.0 / 3.0);
        assert!((v + 241.0 / 324.0).abs() < 1e-14, "{v}");
        // the remaining rational checkpoints used for the k(1) brackets
        assert!((evaluate(1.0, 2.25) - 95.0 / 1024.0).abs() < 1e-14);
        assert!((evaluate(1.0, -1.0) + 0.25).abs() < 1e-14);
        assert!((evaluate(1.0, -0.9) - 1439.0 / 40000.0).abs() < 1e-14);
    }

    #[test]
    fn roots_at_zero() {
        let r = roots(0.0).unwrap();
        assert!(r.k_min.abs() < 1e-14, "{}", r.k_min);
        assert!((r.k_max - 2.0).abs() < 1e-14);
        // x⁴ - 8x = x (x - 2)(x² + 2x + 4)
        assert!((r.quad_a - 1.0).abs() < 1e-14);
        assert!((r.quad_b - 2.0).abs() < 1e-13);
        assert!((r.quad_c - 4.0).abs() < 1e-13);
    }

    #[test]
    fn roots_at_one_lie_in_rational_brackets() {
        let r = roots(1.0).unwrap();
        assert!((2.25..=7.0 / 3.0).contains(&r.k_max), "{}", r.k_max);
        assert!((-1.0..=-0.9).contains(&r.k_min), "{}", r.k_min);
    }

    #[test]
    fn below_admissible_range_is_rejected() {
        let err = roots(C_MIN - 1e-3).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert!(err.to_string().contains("C_min"));
        assert!(roots(f64::NAN).is_err());
        assert!(root_sensitivities(-1.0).is_err());
    }

    #[test]
    fn residuals_and_bracketing_near_double_root() {
        let c = C_MIN + EPS_DEGENERATE;
        let r = roots(c).unwrap();
        assert!(evaluate(c, r.k_min).abs() <= 1e-12);
        assert!(evaluate(c, r.k_max).abs() <= 1e-12);
        assert!(r.k_min <= CBRT_2 && CBRT_2 <= r.k_max);
        assert!(r.cofactor(CBRT_2) > 0.0);
    }

    #[test]
    fn sensitivities_at_zero() {
        let (dm, dmax) = root_sensitivities(0.0).unwrap();
        assert!((dm + 1.0).abs() < 1e-13);
        assert!((dmax - 1.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn sensitivities_diverge_at_degenerate_end() {
        let (dm, dmax) = root_sensitivities(C_MIN + 1e-10).unwrap();
        assert!(dm < -1e3 && dmax > 1e3, "{dm} {dmax}");
    }

    #[test]
    fn vieta_identities_hold_away_from_zero_product() {
        for c in [-0.9, -0.5, 0.1, 0.7, 1.0, 3.0, 25.0] {
            let r = roots(c).unwrap();
            if r.product.abs() > 1e-6 {
                let s = r.sum;
                let p = r.product;
                assert!((s * s - (p - 8.0 * c / p)).abs() <= 1e-9, "C={c}");
                assert!((-8.0 / s - (p + 8.0 * c / p)).abs() <= 1e-9, "C={c}");
            }
        }
    }
}
