//! Seeded generators for randomized checks.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::Rng;

use crate::apollonius::ApolloniusSpec;
use crate::equioptic::Circle;
use crate::geometry::{CurvatureSign, HomogeneousPoint};

use super::euclid::EuclideanCircle;

/// Focal distance in `[0.1, 2]` (hyperbolic) or `[0.1, π/2 − 0.1]`
/// (elliptic); ratio in `[0.1, 5]` at least 1e-3 away from 1.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, sign: CurvatureSign) -> ApolloniusSpec {
    let d_max = match sign {
        CurvatureSign::Hyperbolic => 2.0,
        CurvatureSign::Elliptic => FRAC_PI_2 - 0.1,
    };
    let d = rng.random_range(0.1..d_max);
    let k = loop {
        let k: f64 = rng.random_range(0.1..5.0);
        if (k - 1.0).abs() >= 1e-3 {
            break k;
        }
    };
    ApolloniusSpec::new(d, k, sign).expect("ranges are valid")
}

/// Chart point at geodesic distance `s` from the origin in direction `phi`.
pub fn point_at<R: Rng + ?Sized>(rng: &mut R, s: f64, sign: CurvatureSign) -> HomogeneousPoint {
    let phi = rng.random_range(0.0..TAU);
    let rho = sign.t(s).expect("s below the pole");
    HomogeneousPoint::chart(rho * phi.cos(), rho * phi.sin())
}

fn reach(sign: CurvatureSign) -> f64 {
    match sign {
        CurvatureSign::Hyperbolic => 1.0,
        CurvatureSign::Elliptic => 0.6,
    }
}

fn random_circle<R: Rng + ?Sized>(rng: &mut R, sign: CurvatureSign) -> Circle {
    let s = rng.random_range(0.0..reach(sign));
    let center = point_at(rng, s, sign);
    let radius = rng.random_range(0.05..0.6);
    Circle::new(center, radius, sign).expect("ranges are valid")
}

/// Two circles with distinct centres and radii differing by at least 0.02.
pub fn random_circle_pair<R: Rng + ?Sized>(rng: &mut R, sign: CurvatureSign) -> [Circle; 2] {
    loop {
        let (c1, c2) = (random_circle(rng, sign), random_circle(rng, sign));
        let d = crate::geometry::distance(c1.center(), c2.center(), sign).expect("proper");
        if d > 0.1 && (c1.radius() - c2.radius()).abs() > 0.02 {
            return [c1, c2];
        }
    }
}

/// A circle and a point strictly outside it.
pub fn random_viewing_config<R: Rng + ?Sized>(
    rng: &mut R,
    sign: CurvatureSign,
) -> (HomogeneousPoint, Circle) {
    let circle = random_circle(rng, sign);
    let d_max = match sign {
        CurvatureSign::Hyperbolic => circle.radius() + 1.5,
        CurvatureSign::Elliptic => FRAC_PI_2 - 0.05,
    };
    let d = rng.random_range(circle.radius() + 0.02..d_max);
    let frame = crate::geometry::Isometry::from_origin(circle.center(), sign).expect("proper");
    (frame.apply(&point_at(rng, d, sign)), circle)
}

/// Two Euclidean circles with centres in `[−5, 5]²`, radii in `[0.1, 2]`.
pub fn random_euclidean_pair<R: Rng + ?Sized>(rng: &mut R) -> [EuclideanCircle; 2] {
    let circle = |rng: &mut R| EuclideanCircle {
        center: [rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)],
        radius: rng.random_range(0.1..2.0),
    };
    loop {
        let (c1, c2) = (circle(rng), circle(rng));
        let d = super::euclid::dist(c1.center, c2.center);
        if d > 0.1 && (c1.radius - c2.radius).abs() > 0.02 {
            return [c1, c2];
        }
    }
}

/// Per-geometry offset of a seeded stream, so each geometry draws its own
/// sequence from one user seed.
pub fn stream_salt(base: u64, sign: CurvatureSign) -> u64 {
    base.wrapping_add_signed(i64::from(sign.epsilon_int()))
}
