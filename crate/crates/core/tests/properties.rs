//! Invariants checked on randomly drawn inputs.

use std::f64::consts::{PI, TAU};

use elastica_lab::curvegeom::{self, reconstruct, CurvatureProfile, Point};
use elastica_lab::harness::{self, Family, Report};
use elastica_lab::{elastica, quartic};
use proptest::prelude::*;

fn shape(seed: u64, modes: u32, amp: f64) -> curvegeom::PlanarCurve {
    curvegeom::fourier_shape(seed, modes, amp, 1024).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn roots_are_zeros_and_move_apart(c in -0.94f64..50.0, dc in 1e-3f64..1.0) {
        let r = quartic::roots(c).unwrap();
        let scale = 1.0 + 2.0 * c.abs();
        prop_assert!(quartic::evaluate(c, r.k_min).abs() <= 1e-9 * scale);
        prop_assert!(quartic::evaluate(c, r.k_max).abs() <= 1e-9 * scale);
        prop_assert!(r.k_min < quartic::CBRT_2 && quartic::CBRT_2 < r.k_max);
        let s = quartic::roots(c + dc).unwrap();
        prop_assert!(s.k_max > r.k_max && s.k_min < r.k_min);
    }

    #[test]
    fn period_energy_exceeds_the_bound(c in -0.944f64..200.0) {
        let pd = elastica::period_data(c).unwrap();
        prop_assert!(pd.energy >= elastica::period_energy_lower_bound());
        prop_assert!(pd.period_turning > 0.0 && pd.period_turning < TAU);
    }

    #[test]
    fn half_arc_turning_decreases(c in 0.0f64..50.0, dc in 0.01f64..5.0) {
        let a = elastica::period_data(c).unwrap().turning().unwrap();
        let b = elastica::period_data(c + dc).unwrap().turning().unwrap();
        prop_assert!(b < a);
        prop_assert!(b > -PI / 2.0);
    }

    #[test]
    fn scaling_keeps_eea(seed in any::<u64>(), modes in 2u32..7, amp in 0.0f64..0.08, t in 0.2f64..5.0) {
        let c = shape(seed, modes, amp);
        let m = curvegeom::metrics(&c).unwrap();
        let s = curvegeom::metrics(&c.scaled(t)).unwrap();
        prop_assert!((s.energy - m.energy / t).abs() <= 1e-10 * m.energy / t);
        prop_assert!((s.area - m.area * t * t).abs() <= 1e-10 * m.area * t * t);
        prop_assert!((s.eea - m.eea).abs() <= 1e-9 * m.eea);
    }

    #[test]
    fn reversal_flips_area_sign_only(seed in any::<u64>(), modes in 2u32..7, amp in 0.0f64..0.08) {
        let c = shape(seed, modes, amp);
        let m = curvegeom::metrics(&c).unwrap();
        let r = curvegeom::metrics(&c.reversed()).unwrap();
        prop_assert!((r.energy - m.energy).abs() <= 1e-12 * m.energy);
        prop_assert!((r.area + m.area).abs() <= 1e-12 * m.area);
        prop_assert!((r.perimeter - m.perimeter).abs() <= 1e-12 * m.perimeter);
    }

    #[test]
    fn translation_keeps_energy_and_area(seed in any::<u64>(), dx in -50.0f64..50.0, dy in -50.0f64..50.0) {
        let c = shape(seed, 4, 0.05);
        let m = curvegeom::metrics(&c).unwrap();
        let t = curvegeom::metrics(&c.translated(Point::new(dx, dy))).unwrap();
        prop_assert_eq!(t.energy, m.energy);
        prop_assert!((t.area - m.area).abs() <= 1e-9 * (1.0 + dx.abs() + dy.abs()));
    }

    #[test]
    fn random_shapes_obey_the_inequalities(seed in any::<u64>(), modes in 2u32..9, frac in 0.0f64..1.0) {
        let amp = frac * 0.45 / (modes - 1) as f64;
        let c = shape(seed, modes, amp);
        let m = curvegeom::metrics(&c).unwrap();
        prop_assert!(m.eea >= PI.powi(3) * (1.0 - 1e-9));
        let r = harness::centroid_radius(&c);
        prop_assert!(m.perimeter <= 2.0 * r * r * m.energy);
        if curvegeom::is_convex(&c, harness::CONVEXITY_TOL) {
            prop_assert!(m.gage_ratio >= PI / 2.0 * (1.0 - 1e-9));
        }
    }

    #[test]
    fn constant_curvature_closes(r in 0.05f64..20.0, theta0 in -3.0f64..3.0) {
        let profile = CurvatureProfile::from_fn(TAU * r, theta0, 1024, |_| 1.0 / r).unwrap();
        let c = reconstruct(&profile, Point::new(1.0, -2.0));
        prop_assert!(c.closure_gap() <= 1e-8 * c.length);
        let m = curvegeom::metrics(&c).unwrap();
        prop_assert!((m.eea / PI.powi(3) - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn ring_closed_forms_match_two_circles(r in 0.5f64..200.0) {
        let (e, a) = curvegeom::ring_metrics(r);
        let outer = r + 1.0 / r;
        let e_oracle = PI / r + PI / outer;
        let a_oracle = PI * (outer * outer - r * r);
        prop_assert!((e - e_oracle).abs() <= 1e-12 * e_oracle);
        prop_assert!((a - a_oracle).abs() <= 1e-9 * a_oracle);
    }

    #[test]
    fn report_ignores_record_order(seed in 0u64..1000, rot in 0usize..12) {
        let records: Vec<_> = (0..12).map(|i| harness::sample(Family::Ellipse, seed + i as u64, i).unwrap()).collect();
        let mut rotated = records.clone();
        rotated.rotate_left(rot);
        let a = Report::from_records(Family::Ellipse, seed, records);
        let b = Report::from_records(Family::Ellipse, seed, rotated);
        prop_assert_eq!(a, b);
    }
}

#[test]
fn seeded_samples_repeat() {
    for family in [Family::Fourier, Family::Ellipse, Family::Dumbbell] {
        for i in 0..4 {
            let a = harness::sample(family, 17 + i as u64, i).unwrap();
            let b = harness::sample(family, 17 + i as u64, i).unwrap();
            assert_eq!(a, b);
        }
    }
}
