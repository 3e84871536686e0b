//! Planar curves parametrized by arc length: reconstruction from curvature,
//! the energy, area and length functionals, and the shape families used as
//! test inputs.

mod counterexamples;
mod curve;
mod metrics;
mod shapes;

pub use counterexamples::{gaussian_energy_density, gaussian_metrics, gaussian_truncation, ring_metrics};
pub use curve::{reconstruct, CurvatureProfile, PlanarCurve, Point, CLOSURE_TOL};
pub use metrics::{
    curvature_std, disc_energy_plus_area, is_convex, max_abs_curvature, metrics, polygon_area, tangential_area,
    ShapeMetrics,
};
pub use shapes::{
    chord_factor, disc, dumbbell, dumbbell_pieces, ellipse, fourier_radius, fourier_shape, resample,
    segment_area_factor, turning_in_half_turns, Circle, Ellipse, FourierRadius, ParametricLoop, Piece, PiecewiseCurve,
    DUMBBELL_BLEND_RADIUS, GENERATOR_INTERVALS, MIN_FOURIER_RADIUS,
};
