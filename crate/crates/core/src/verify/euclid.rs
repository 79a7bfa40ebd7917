//! Flat-plane baseline: classical Apollonius circles and viewing angles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EuclideanCircle {
    pub center: [f64; 2],
    pub radius: f64,
}

impl EuclideanCircle {
    pub fn point_at(&self, theta: f64) -> [f64; 2] {
        let (s, c) = theta.sin_cos();
        [
            self.center[0] + self.radius * c,
            self.center[1] + self.radius * s,
        ]
    }

    /// Distance from `p` to the circle itself.
    pub fn deviation(&self, p: [f64; 2]) -> f64 {
        (dist(p, self.center) - self.radius).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EuclidLocus {
    Circle(EuclideanCircle),
    /// Perpendicular bisector through `point` with unit `normal`.
    Line {
        point: [f64; 2],
        normal: [f64; 2],
    },
}

pub(crate) fn dist(p: [f64; 2], q: [f64; 2]) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

/// Locus of `|PA| / |PB| = k` in the Euclidean plane.
///
/// For `k ≠ 1` the circle has the internal and external division points of
/// `AB` in ratio `k` as the ends of a diameter.
pub fn euclid_apollonius(a: [f64; 2], b: [f64; 2], k: f64) -> Result<EuclidLocus> {
    let ab = dist(a, b);
    if ab == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    if k == 1.0 {
        let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        let normal = [(b[0] - a[0]) / ab, (b[1] - a[1]) / ab];
        return Ok(EuclidLocus::Line { point: mid, normal });
    }
    let internal = [(a[0] + k * b[0]) / (1.0 + k), (a[1] + k * b[1]) / (1.0 + k)];
    let external = [(a[0] - k * b[0]) / (1.0 - k), (a[1] - k * b[1]) / (1.0 - k)];
    Ok(EuclidLocus::Circle(EuclideanCircle {
        center: [
            (internal[0] + external[0]) / 2.0,
            (internal[1] + external[1]) / 2.0,
        ],
        radius: dist(internal, external) / 2.0,
    }))
}

/// `2·arcsin(r/d)`, the angle subtended by a circle of radius `r` from a
/// point at distance `d ≥ r` from its centre.
pub fn euclid_viewing_angle(p: [f64; 2], circle: &EuclideanCircle) -> Result<f64> {
    let d = dist(p, circle.center);
    if d < circle.radius {
        return Err(Error::InsideCircle {
            distance: d,
            radius: circle.radius,
        });
    }
    Ok(2.0 * (circle.radius / d).min(1.0).asin())
}
