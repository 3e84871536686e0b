//! Batch checks of `E²A >= π³`, `L <= 2R²E` and the convex Gage bound over
//! seeded shape families, and sweeps of the unbounded or non-simply
//! connected counterexamples.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curvegeom::{
    self, dumbbell_pieces, ellipse, fourier_shape, gaussian_metrics, is_convex, ring_metrics, PlanarCurve,
    ShapeMetrics, GENERATOR_INTERVALS,
};
use crate::error::{Error, Result};

/// Relative slack on every inequality.
pub const SLACK: f64 = 1e-9;
/// Curvature threshold for treating a sample as convex.
pub const CONVEXITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Fourier,
    Ellipse,
    Dumbbell,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Fourier => "fourier",
            Family::Ellipse => "ellipse",
            Family::Dumbbell => "dumbbell",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fourier" => Ok(Family::Fourier),
            "ellipse" => Ok(Family::Ellipse),
            "dumbbell" => Ok(Family::Dumbbell),
            _ => Err(Error::Domain(format!("unknown family {s:?}"))),
        }
    }
}

/// One failed (or nearly failed) inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub seed: u64,
    pub quantity: String,
    pub value: f64,
    pub bound: f64,
}

/// Per-sample measurements.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRecord {
    pub seed: u64,
    pub metrics: ShapeMetrics,
    /// `2R²E` with `R` measured about the mean of the sample points.
    pub length_bound: f64,
    pub convex: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub family: Family,
    pub n_samples: usize,
    pub seed: u64,
    #[serde(rename = "min_EEA")]
    pub min_eea: f64,
    #[serde(rename = "min_EEA_seed")]
    pub min_eea_seed: u64,
    pub min_gage_ratio: f64,
    pub min_gage_ratio_seed: u64,
    pub convex_samples: usize,
    pub violations: Vec<Violation>,
    /// Inequalities that hold only within the slack.
    pub grazing: Vec<Violation>,
    /// Wall-clock time; left out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub runtime: f64,
}

/// Checks `value >= bound` with relative slack, sorting the outcome into
/// violations or grazing entries.
fn check_at_least(seed: u64, quantity: &str, value: f64, bound: f64, v: &mut Vec<Violation>, g: &mut Vec<Violation>) {
    let entry = || Violation {
        seed,
        quantity: quantity.to_string(),
        value,
        bound,
    };
    if value < bound - SLACK * bound.abs() {
        v.push(entry());
    } else if value < bound {
        g.push(entry());
    }
}

impl Report {
    /// Merges sample records; the result does not depend on their order.
    pub fn from_records(family: Family, seed: u64, mut records: Vec<SampleRecord>) -> Self {
        records.sort_by_key(|r| r.seed);
        let pi3 = PI.powi(3);
        let mut violations = vec![];
        let mut grazing = vec![];
        let mut min_eea = (f64::INFINITY, 0);
        let mut min_gage = (f64::INFINITY, 0);
        let mut convex = 0;
        for r in &records {
            let m = &r.metrics;
            if m.eea < min_eea.0 {
                min_eea = (m.eea, r.seed);
            }
            if m.gage_ratio < min_gage.0 {
                min_gage = (m.gage_ratio, r.seed);
            }
            check_at_least(r.seed, "EEA", m.eea, pi3, &mut violations, &mut grazing);
            check_at_least(
                r.seed,
                "2R2E",
                r.length_bound,
                m.perimeter,
                &mut violations,
                &mut grazing,
            );
            if r.convex {
                convex += 1;
                check_at_least(
                    r.seed,
                    "gage_ratio",
                    m.gage_ratio,
                    FRAC_PI_2,
                    &mut violations,
                    &mut grazing,
                );
            }
        }
        Report {
            family,
            n_samples: records.len(),
            seed,
            min_eea: min_eea.0,
            min_eea_seed: min_eea.1,
            min_gage_ratio: min_gage.0,
            min_gage_ratio_seed: min_gage.1,
            convex_samples: convex,
            violations,
            grazing,
            runtime: 0.0,
        }
    }
}

/// Radius of the sampled curve about the mean of its points.
pub fn centroid_radius(curve: &PlanarCurve) -> f64 {
    curve.radius_about(curve.centroid())
}

fn record(seed: u64, curve: &PlanarCurve, metrics: ShapeMetrics) -> SampleRecord {
    let r = centroid_radius(curve);
    SampleRecord {
        seed,
        metrics,
        length_bound: 2.0 * r * r * metrics.energy,
        convex: is_convex(curve, CONVEXITY_TOL),
    }
}

/// Generates and measures sample `index` of `family` under base `seed`.
pub fn sample(family: Family, seed: u64, index: usize) -> Result<SampleRecord> {
    let s = seed.wrapping_add(index as u64);
    let tag = |e: Error| Error::Rejected(format!("sample seed {s}: {e}"));
    match family {
        Family::Fourier => {
            let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x5eed_f00d);
            let modes: u32 = rng.gen_range(2..=8);
            let amplitude = rng.gen_range(0.0..=0.45 / (modes - 1) as f64);
            let curve = fourier_shape(s, modes, amplitude, GENERATOR_INTERVALS).map_err(tag)?;
            let m = curvegeom::metrics(&curve).map_err(tag)?;
            Ok(record(s, &curve, m))
        }
        Family::Ellipse => {
            let aspect = if index == 0 {
                1.0
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0xe111_95e5);
                1.0 + 5.0 * (1.0 - rng.gen::<f64>())
            };
            let curve = ellipse(aspect, 1.0, GENERATOR_INTERVALS).map_err(tag)?;
            let m = curvegeom::metrics(&curve).map_err(tag)?;
            Ok(record(s, &curve, m))
        }
        Family::Dumbbell => {
            let neck = 5.0 * 2f64.powi((index % 6) as i32);
            let pieces = dumbbell_pieces(neck).map_err(tag)?;
            let n = ((pieces.length() / 0.005).ceil() as usize).max(GENERATOR_INTERVALS);
            let curve = pieces.sample(n);
            let m = pieces.metrics(&curve);
            Ok(record(s, &curve, m))
        }
    }
}

/// Checks the inequalities on `n_samples` members of `family`. Samples are
/// evaluated in parallel; the report is independent of scheduling.
pub fn verify_family(family: Family, n_samples: usize, seed: u64) -> Result<Report> {
    if n_samples == 0 {
        return Err(Error::Domain("n_samples must be at least 1".into()));
    }
    let start = Instant::now();
    let records = (0..n_samples)
        .into_par_iter()
        .map(|i| sample(family, seed, i))
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::from_records(family, seed, records);
    report.runtime = start.elapsed().as_secs_f64();
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Counterexample {
    Ring,
    Gaussian,
    Dumbbell,
}

impl FromStr for Counterexample {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ring" => Ok(Counterexample::Ring),
            "gaussian" => Ok(Counterexample::Gaussian),
            "dumbbell" => Ok(Counterexample::Dumbbell),
            _ => Err(Error::Domain(format!("unknown counterexample {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub param: f64,
    #[serde(rename = "E")]
    pub energy: f64,
    #[serde(rename = "A")]
    pub area: f64,
    #[serde(rename = "EEA")]
    pub eea: f64,
    #[serde(rename = "Lperim", skip_serializing_if = "Option::is_none")]
    pub perimeter: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gage_ratio: Option<f64>,
}

/// Rows `(param, E, A, E²A)` along a sweep of the ring radius `R`, the
/// Gaussian width `α`, or the dumbbell neck length.
pub fn counterexample_sweep(kind: Counterexample, params: &[f64]) -> Result<Vec<SweepRow>> {
    params
        .iter()
        .map(|&p| {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::Domain(format!("sweep parameters must be positive, got {p}")));
            }
            let row = |e: f64, a: f64| SweepRow {
                param: p,
                energy: e,
                area: a,
                eea: e * e * a,
                perimeter: None,
                gage_ratio: None,
            };
            Ok(match kind {
                Counterexample::Ring => {
                    let (e, a) = ring_metrics(p);
                    row(e, a)
                }
                Counterexample::Gaussian => {
                    let (e, a) = gaussian_metrics(p);
                    row(e, a)
                }
                Counterexample::Dumbbell => {
                    let pieces = dumbbell_pieces(p)?;
                    let m = pieces.metrics(&pieces.sample(4096));
                    SweepRow {
                        perimeter: Some(m.perimeter),
                        gage_ratio: Some(m.gage_ratio),
                        ..row(m.energy, m.area)
                    }
                }
            })
        })
        .collect()
}

/// Whether `E²A` strictly decreases along the rows.
pub fn strictly_decreasing(rows: &[SweepRow]) -> bool {
    rows.windows(2).all(|w| w[1].eea < w[0].eea)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ellipse_family_starts_with_the_disc() {
        let r = verify_family(Family::Ellipse, 1, 17).unwrap();
        assert!((r.min_eea / PI.powi(3) - 1.0).abs() < 1e-9);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn small_fourier_sweep_is_clean_and_deterministic() {
        let a = verify_family(Family::Fourier, 40, 1).unwrap();
        let b = verify_family(Family::Fourier, 40, 1).unwrap();
        assert!(a.violations.is_empty(), "{:?}", a.violations);
        assert!(a.min_eea >= PI.powi(3));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn merge_ignores_record_order() {
        let recs: Vec<_> = (0..12).map(|i| sample(Family::Ellipse, 3, i).unwrap()).collect();
        let mut rev = recs.clone();
        rev.reverse();
        assert_eq!(
            Report::from_records(Family::Ellipse, 3, recs),
            Report::from_records(Family::Ellipse, 3, rev)
        );
    }

    #[test]
    fn dumbbells_break_gage_but_not_the_inequality() {
        let r = verify_family(Family::Dumbbell, 5, 0).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.min_gage_ratio < FRAC_PI_2);
    }

    #[test]
    fn sweeps() {
        let ring = counterexample_sweep(Counterexample::Ring, &[1.0, 10.0, 100.0, 1000.0]).unwrap();
        assert!(strictly_decreasing(&ring));
        assert!(ring[3].eea < 0.01 * PI.powi(3));
        assert_eq!((ring[0].energy, ring[0].area), (1.5 * PI, 3.0 * PI));
        let g = counterexample_sweep(Counterexample::Gaussian, &[1.0, 0.1, 0.01]).unwrap();
        assert!(strictly_decreasing(&g));
        assert!(counterexample_sweep(Counterexample::Ring, &[-1.0]).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for f in [Family::Fourier, Family::Ellipse, Family::Dumbbell] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("square".parse::<Family>().is_err());
    }
}
