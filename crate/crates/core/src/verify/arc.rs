//! The distance-ratio Apollonius locus, `d(A,P) = k·d(B,P)`, traced along
//! geodesic rays from `A`. It has no closed form in curved geometry, so it
//! is only ever produced as point samples.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use nalgebra::Vector3;

use crate::geometry::{distance, CurvatureSign, HomogeneousPoint, Isometry};

/// `d(A,P) − k·d(B,P)`: zero exactly on the distance-ratio locus.
pub fn arc_ratio_residual(
    p: &HomogeneousPoint,
    a: &HomogeneousPoint,
    b: &HomogeneousPoint,
    k: f64,
    sign: CurvatureSign,
) -> Result<f64> {
    Ok(distance(a, p, sign)? - k * distance(b, p, sign)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayTraceResult {
    /// Direction of the ray at `A`, measured in the frame that puts `A` at
    /// the origin.
    pub direction: f64,
    /// Geodesic distance from `A` to the first root, if any.
    pub root_distance: Option<f64>,
    pub residual: f64,
}

/// Rays from `A` in the frame that puts `A` at the origin.
///
/// Far along a hyperbolic ray the chart point sits close to the absolute
/// and `⟨P,P⟩` loses about `e^{2s}·1e-16` to cancellation, so residuals are
/// evaluated intrinsically: `d(A,P) = s` exactly, and `d(B,P)` comes from
/// `B` normalized to `|⟨B,B⟩| = 1` against the exactly normalized ray point
/// `(S(s)·cos φ, S(s)·sin φ, C(s))`.
struct RayFan {
    sign: CurvatureSign,
    b: Vector3<f64>,
    k: f64,
}

impl RayFan {
    fn new(
        a: &HomogeneousPoint,
        b: &HomogeneousPoint,
        k: f64,
        sign: CurvatureSign,
    ) -> Result<Self> {
        let local = Isometry::to_origin(a, sign)?.apply(b).vector();
        let norm = bilinear_form_of(&local, sign).abs().sqrt();
        let b = if local.z < 0.0 {
            -local / norm
        } else {
            local / norm
        };
        Ok(Self { sign, b, k })
    }

    fn point(&self, phi: f64, s: f64) -> Vector3<f64> {
        let (sp, cp) = phi.sin_cos();
        let (ss, cs) = (self.sign.s(s), self.sign.c(s));
        Vector3::new(ss * cp, ss * sp, cs)
    }

    fn distance_to_b(&self, phi: f64, s: f64) -> f64 {
        let p = self.point(phi, s);
        match self.sign {
            CurvatureSign::Hyperbolic => {
                let c = p.z * self.b.z - p.x * self.b.x - p.y * self.b.y;
                c.max(1.0).acosh()
            }
            CurvatureSign::Elliptic => p.cross(&self.b).norm().atan2(p.dot(&self.b).abs()),
        }
    }

    fn residual(&self, phi: f64, s: f64) -> f64 {
        s - self.k * self.distance_to_b(phi, s)
    }
}

fn bilinear_form_of(v: &Vector3<f64>, sign: CurvatureSign) -> f64 {
    v.x * v.x + v.y * v.y + sign.epsilon() * v.z * v.z
}

/// Marching parameter → geodesic distance. Hyperbolic rays march in chart
/// radius `ρ ∈ [0, 1)`, elliptic rays in arc length `s ∈ [0, π/2)`.
fn march(sign: CurvatureSign) -> (Vec<f64>, fn(f64) -> f64) {
    const STEP: f64 = 0.01;
    match sign {
        CurvatureSign::Hyperbolic => {
            let mut grid: Vec<f64> = (0..100).map(|i| i as f64 * STEP).collect();
            grid.push(1.0 - 1e-9);
            (grid, f64::atanh)
        }
        CurvatureSign::Elliptic => {
            let mut grid: Vec<f64> = (0..158).map(|i| i as f64 * STEP).collect();
            grid.push(FRAC_PI_2 - 1e-9);
            (grid, |s| s)
        }
    }
}

/// Traces the distance-ratio locus along `n_rays` geodesic rays from `a`.
///
/// Each ray is marched outward until the residual changes sign; the bracket
/// is then bisected 60 times in geodesic distance, which stays well
/// conditioned near the absolute where the chart radius does not. Rays with
/// no sign change inside the proper region report `root_distance: None`.
pub fn trace_arc_apollonius(
    a: &HomogeneousPoint,
    b: &HomogeneousPoint,
    k: f64,
    sign: CurvatureSign,
    n_rays: usize,
) -> Result<Vec<RayTraceResult>> {
    if distance(a, b, sign)? == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    let fan = RayFan::new(a, b, k, sign)?;
    let (grid, to_distance) = march(sign);

    (0..n_rays)
        .map(|j| {
            let phi = TAU * j as f64 / n_rays as f64;
            let mut prev_s = to_distance(grid[0]);
            let mut prev_r = fan.residual(phi, prev_s);
            for &t in &grid[1..] {
                let s = to_distance(t);
                let r = fan.residual(phi, s);
                if prev_r * r <= 0.0 {
                    let (mut lo, mut hi, mut r_lo) = (prev_s, s, prev_r);
                    for _ in 0..60 {
                        let mid = 0.5 * (lo + hi);
                        let r_mid = fan.residual(phi, mid);
                        if r_mid * r_lo > 0.0 {
                            lo = mid;
                            r_lo = r_mid;
                        } else {
                            hi = mid;
                        }
                    }
                    let root = 0.5 * (lo + hi);
                    return Ok(RayTraceResult {
                        direction: phi,
                        root_distance: Some(root),
                        residual: fan.residual(phi, root),
                    });
                }
                prev_s = s;
                prev_r = r;
            }
            Ok(RayTraceResult {
                direction: phi,
                root_distance: None,
                residual: prev_r,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apollonius::{apollonius_curve, canonical_foci, sample_curve, ApolloniusSpec};

    const H: CurvatureSign = CurvatureSign::Hyperbolic;
    const E: CurvatureSign = CurvatureSign::Elliptic;

    #[test]
    fn residual_trivial_cases() {
        let a = HomogeneousPoint::chart(0.3, 0.0);
        let b = HomogeneousPoint::chart(-0.3, 0.0);
        let p = HomogeneousPoint::chart(0.0, 0.5);
        assert!(arc_ratio_residual(&p, &a, &b, 1.0, H).unwrap().abs() < 1e-15);
        let r = arc_ratio_residual(&a, &a, &b, 2.0, H).unwrap();
        assert!((r + 2.0 * distance(&a, &b, H).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn definitions_differ_off_axis() {
        let spec = ApolloniusSpec::new(1.4, 0.3, H).unwrap();
        let (a, b) = canonical_foci(&spec).points();
        let curve = apollonius_curve(&spec).unwrap();
        let worst = sample_curve(&curve, 64)
            .unwrap()
            .into_iter()
            .filter(|p| p[1].abs() > 1e-3)
            .map(|[x, y]| {
                arc_ratio_residual(&HomogeneousPoint::chart(x, y), &a, &b, 0.3, H)
                    .unwrap()
                    .abs()
            })
            .fold(0.0, f64::max);
        assert!(worst > 1e-3, "worst residual {worst}");
    }

    #[test]
    fn ray_towards_b_hits_internal_division_point() {
        for sign in [H, E] {
            let d = 0.9;
            let k = 0.6;
            let a = HomogeneousPoint::origin();
            let b = HomogeneousPoint::chart(-sign.t(d).unwrap(), 0.0);
            // direction π points from A to B; n_rays = 2 gives φ ∈ {0, π}
            let rays = trace_arc_apollonius(&a, &b, k, sign, 2).unwrap();
            let toward_b = rays[1];
            let expected = k * d / (1.0 + k);
            let root = toward_b.root_distance.unwrap();
            assert!(
                (root - expected).abs() < 1e-10,
                "{sign}: {root} vs {expected}"
            );
            assert!(toward_b.residual.abs() < 1e-10);
        }
    }

    #[test]
    fn residuals_at_roots_are_small() {
        for sign in [H, E] {
            let a = HomogeneousPoint::chart(0.2, 0.1);
            let b = HomogeneousPoint::chart(-0.3, -0.2);
            let rays = trace_arc_apollonius(&a, &b, 0.5, sign, 48).unwrap();
            let roots: Vec<_> = rays.iter().filter(|r| r.root_distance.is_some()).collect();
            assert!(!roots.is_empty());
            assert!(roots.iter().all(|r| r.residual.abs() < 1e-10));
        }
    }

    #[test]
    fn intrinsic_residual_matches_definition() {
        for sign in [H, E] {
            let a = HomogeneousPoint::chart(0.2, 0.1);
            let b = HomogeneousPoint::chart(-0.3, -0.2);
            let fan = RayFan::new(&a, &b, 0.7, sign).unwrap();
            let frame = Isometry::from_origin(&a, sign).unwrap();
            for (phi, s) in [(0.3, 0.2), (2.0, 0.9), (4.0, 1.3)] {
                let p = frame.apply(&HomogeneousPoint::from_vector(fan.point(phi, s)).unwrap());
                let direct = arc_ratio_residual(&p, &a, &b, 0.7, sign).unwrap();
                assert!(
                    (fan.residual(phi, s) - direct).abs() < 1e-12,
                    "{sign} {phi} {s}"
                );
            }
        }
    }

    #[test]
    fn near_unit_ratio_approaches_bisector() {
        let a = HomogeneousPoint::chart(0.3, 0.0);
        let b = HomogeneousPoint::chart(-0.3, 0.0);
        let frame = Isometry::from_origin(&a, H).unwrap();
        let fan = RayFan::new(&a, &b, 1.0, H).unwrap();
        let mut spread = Vec::new();
        for eps in [1e-1, 1e-2, 1e-3] {
            let rays = trace_arc_apollonius(&a, &b, 1.0 - eps, H, 16).unwrap();
            let worst = rays
                .iter()
                .filter_map(|r| r.root_distance.map(|s| (r.direction, s)))
                .map(|(phi, s)| {
                    let p = frame.apply(&HomogeneousPoint::from_vector(fan.point(phi, s)).unwrap());
                    let [x, _] = p.to_chart().unwrap();
                    x.abs()
                })
                .fold(0.0, f64::max);
            spread.push(worst);
        }
        assert!(spread[0] > spread[1] && spread[1] > spread[2]);
    }
}
