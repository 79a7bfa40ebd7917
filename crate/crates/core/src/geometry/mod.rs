//! Projective-model primitives for the hyperbolic and elliptic planes.
//!
//! Points and lines are homogeneous triples; the geometry is fixed by the
//! symmetric form `diag(1, 1, ε)`. In the hyperbolic case this is the
//! Beltrami–Klein disk, in the elliptic case the gnomonic chart.

mod isometry;
mod point;
mod sign;

pub use isometry::{line_to_axis, move_pair_to_canonical, Isometry};
pub use point::{
    bilinear_form, distance, distance_from_cosine, line_angle, sin_distance, Homogeneous,
    HomogeneousLine, HomogeneousPoint,
};
pub(crate) use sign::check_radius;
pub use sign::{circumference, CurvatureSign};
