//! Viewing angles of circles and the equioptic curve of two circles.
//!
//! From a point `P` at distance `d` from the centre of a circle of radius
//! `r`, the circle is seen under the angle `α` with `sin(α/2) = S(r)/S(d)`.
//! Equal angles for two circles therefore mean `S(d₁)/S(d₂) = S(r₁)/S(r₂)`,
//! so the equioptic curve is the generalized Apollonius curve of the centres
//! with `k = S(r₁)/S(r₂)`.

use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::apollonius::{
    apollonius_curve, canonical_foci, conic_samples_in_frame, ApolloniusSpec, CanonicalFoci,
    QuadraticCurve,
};
use crate::error::{Error, Result};
use crate::geometry::{
    check_radius, distance, line_angle, move_pair_to_canonical, sin_distance, CurvatureSign,
    HomogeneousPoint, Isometry,
};

/// A metric circle: proper centre and geodesic radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    center: HomogeneousPoint,
    radius: f64,
}

impl Circle {
    pub fn new(center: HomogeneousPoint, radius: f64, sign: CurvatureSign) -> Result<Self> {
        check_radius(radius, sign)?;
        let center = center.require_proper(sign)?;
        Ok(Self { center, radius })
    }

    /// Circle centred at the chart point `(x, y)`.
    pub fn at(x: f64, y: f64, radius: f64, sign: CurvatureSign) -> Result<Self> {
        Self::new(HomogeneousPoint::chart(x, y), radius, sign)
    }

    pub fn center(&self) -> &HomogeneousPoint {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// The circle image under an isometry.
    pub fn transformed(&self, iso: &Isometry, sign: CurvatureSign) -> Result<Self> {
        Self::new(iso.apply(&self.center), self.radius, sign)
    }

    /// Homogeneous point of the circle at parameter `θ`, together with its
    /// derivative in `θ`. The circle is the image of the model circle of
    /// radius `T(r)` about the origin.
    pub(crate) fn locus_at(
        &self,
        frame: &Isometry,
        theta: f64,
        sign: CurvatureSign,
    ) -> (Vector3<f64>, Vector3<f64>) {
        let t = sign.t(self.radius).expect("radius checked below π/2");
        let (s, c) = theta.sin_cos();
        let m = frame.matrix();
        (
            m * Vector3::new(t * c, t * s, 1.0),
            m * Vector3::new(-t * s, t * c, 0.0),
        )
    }

    pub(crate) fn frame(&self, sign: CurvatureSign) -> Isometry {
        Isometry::from_origin(&self.center, sign).expect("centre checked proper")
    }
}

/// Angle `α ∈ (0, π]` under which `circle` is seen from `p`, from
/// `sin(α/2) = S(r)/S(d)`.
pub fn viewing_angle(p: &HomogeneousPoint, circle: &Circle, sign: CurvatureSign) -> Result<f64> {
    let s_d = sin_distance(p, &circle.center, sign)?;
    if s_d == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    let s_r = sign.s(circle.radius);
    if s_d < s_r * (1.0 - 1e-12) {
        return Err(Error::InsideCircle {
            distance: distance(p, &circle.center, sign)?,
            radius: circle.radius,
        });
    }
    Ok(2.0 * (s_r / s_d).min(1.0).asin())
}

/// The same angle built from the two tangent lines.
///
/// Tangency points are found on the parametrized circle where `p` is
/// incident with the tangent line `Q(θ) × Q'(θ)`: sign changes of
/// `det(p, Q, Q')` on a grid are refined by bisection. Each tangent line
/// makes the angle `α/2` with the line through `p` and the centre, measured
/// by the line-angle formula; the two halves are summed.
pub fn viewing_angle_oracle(
    p: &HomogeneousPoint,
    circle: &Circle,
    sign: CurvatureSign,
) -> Result<f64> {
    const GRID: usize = 720;
    let d = distance(p, &circle.center, sign)?;
    if d == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    if d <= circle.radius {
        return Err(Error::InsideCircle {
            distance: d,
            radius: circle.radius,
        });
    }
    let pv = p.vector();
    let frame = circle.frame(sign);
    let incidence = |theta: f64| {
        let (q, dq) = circle.locus_at(&frame, theta, sign);
        pv.dot(&q.cross(&dq))
    };

    let step = 2.0 * PI / GRID as f64;
    let mut tangents = Vec::new();
    for i in 0..GRID {
        let (mut lo, mut hi) = (i as f64 * step, (i + 1) as f64 * step);
        let (mut f_lo, f_hi) = (incidence(lo), incidence(hi));
        if f_lo == 0.0 {
            tangents.push(lo);
            continue;
        }
        if f_lo * f_hi >= 0.0 {
            continue;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let f_mid = incidence(mid);
            if f_mid * f_lo > 0.0 {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        tangents.push(0.5 * (lo + hi));
    }
    if tangents.len() != 2 {
        return Err(Error::TangentConstruction(format!(
            "expected two tangency points, found {}",
            tangents.len()
        )));
    }

    let axis = p.join(&circle.center)?;
    let mut alpha = 0.0;
    for theta in tangents {
        let (q, _) = circle.locus_at(&frame, theta, sign);
        let touch = HomogeneousPoint::from_vector(q)?;
        alpha += line_angle(&p.join(&touch)?, &axis, sign)?;
    }
    Ok(alpha)
}

/// The equioptic curve of two circles, expressed in the original
/// coordinates, with the frame that moved it to canonical position.
#[derive(Debug, Clone, PartialEq)]
pub struct EquiopticResult {
    pub curve: QuadraticCurve,
    /// Original → canonical.
    pub frame: Isometry,
    pub k: f64,
    pub d: f64,
    pub spec: ApolloniusSpec,
    pub foci: CanonicalFoci,
    pub canonical: QuadraticCurve,
    pub circles: [Circle; 2],
}

impl EquiopticResult {
    pub fn sign(&self) -> CurvatureSign {
        self.spec.sign()
    }

    pub fn is_line(&self) -> bool {
        self.spec.is_line_case()
    }

    /// Proper curve points in the original coordinates: canonical samples
    /// carried back through the frame.
    pub fn samples(&self, n: usize) -> Result<Vec<HomogeneousPoint>> {
        conic_samples_in_frame(&self.canonical, &self.frame.inverse(), n)
    }

    /// Samples from which both circles have a defined viewing angle.
    pub fn valid_samples(&self, n: usize) -> Result<Vec<HomogeneousPoint>> {
        let [c1, c2] = &self.circles;
        Ok(filter_valid_equioptic_points(
            &self.samples(n)?,
            c1,
            c2,
            self.sign(),
        ))
    }

    /// Largest `|α₁ − α₂|` over the valid samples.
    pub fn max_angle_residual(&self, n: usize) -> Result<f64> {
        let [c1, c2] = &self.circles;
        let sign = self.sign();
        self.valid_samples(n)?.iter().try_fold(0.0f64, |acc, p| {
            let gap = (viewing_angle(p, c1, sign)? - viewing_angle(p, c2, sign)?).abs();
            Ok(acc.max(gap))
        })
    }
}

/// Equioptic curve of `c1` and `c2`: the generalized Apollonius curve of
/// the centres with `k = S(r₁)/S(r₂)`, pulled back from canonical position.
pub fn equioptic_curve(c1: &Circle, c2: &Circle, sign: CurvatureSign) -> Result<EquiopticResult> {
    let d = distance(&c1.center, &c2.center, sign)?;
    if d <= 1e-12 {
        return Err(Error::Concentric);
    }
    let k = sign.s(c1.radius) / sign.s(c2.radius);
    let spec = ApolloniusSpec::new(d, k, sign)?;
    let (frame, _, _) = move_pair_to_canonical(&c1.center, &c2.center, k, sign)?;
    let canonical = apollonius_curve(&spec)?;
    Ok(EquiopticResult {
        curve: canonical.pulled_back(&frame),
        frame,
        k,
        d,
        spec,
        foci: canonical_foci(&spec),
        canonical,
        circles: [*c1, *c2],
    })
}

/// Keeps the proper points from which both circles are seen, that is, those
/// at distance at least `rᵢ` from each centre.
pub fn filter_valid_equioptic_points(
    points: &[HomogeneousPoint],
    c1: &Circle,
    c2: &Circle,
    sign: CurvatureSign,
) -> Vec<HomogeneousPoint> {
    let outside = |p: &HomogeneousPoint, c: &Circle| {
        sin_distance(p, &c.center, sign).is_ok_and(|s| s >= sign.s(c.radius))
    };
    points
        .iter()
        .filter(|p| p.is_proper(sign) && outside(p, c1) && outside(p, c2))
        .copied()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apollonius::sine_ratio;
    use crate::geometry::Homogeneous;
    use std::f64::consts::FRAC_PI_2;

    const H: CurvatureSign = CurvatureSign::Hyperbolic;
    const E: CurvatureSign = CurvatureSign::Elliptic;

    fn point_at_distance(d: f64, sign: CurvatureSign) -> HomogeneousPoint {
        HomogeneousPoint::chart(sign.t(d).unwrap(), 0.0)
    }

    #[test]
    fn angle_on_circle_is_straight() {
        for sign in [H, E] {
            let circle = Circle::at(0.0, 0.0, 0.4, sign).unwrap();
            let alpha = viewing_angle(&point_at_distance(0.4, sign), &circle, sign).unwrap();
            assert!((alpha - PI).abs() < 1e-6);
        }
    }

    #[test]
    fn angle_values() {
        let circle = Circle::at(0.0, 0.0, 0.5, H).unwrap();
        let alpha = viewing_angle(&point_at_distance(1.0, H), &circle, H).unwrap();
        assert!((alpha - 0.918_797_872_178_027_4).abs() < 1e-14);
        let circle = Circle::at(0.0, 0.0, 0.3, E).unwrap();
        let alpha = viewing_angle(&point_at_distance(0.8, E), &circle, E).unwrap();
        assert!((alpha - 0.849_202_514_474_908_8).abs() < 1e-14);
    }

    #[test]
    fn angle_decreases_with_distance() {
        let circle = Circle::at(0.1, -0.2, 0.5, H).unwrap();
        let mut last = PI;
        for i in 1..40 {
            let d = 0.5 + 0.2 * i as f64;
            let p = Isometry::from_origin(circle.center(), H)
                .unwrap()
                .apply(&point_at_distance(d, H));
            let alpha = viewing_angle(&p, &circle, H).unwrap();
            assert!(alpha < last);
            last = alpha;
        }
        assert!(last < 1e-2);
    }

    #[test]
    fn angle_errors() {
        let circle = Circle::at(0.2, 0.0, 0.5, H).unwrap();
        assert_eq!(
            viewing_angle(circle.center(), &circle, H),
            Err(Error::CoincidentPoints)
        );
        assert!(matches!(
            viewing_angle(&HomogeneousPoint::chart(0.3, 0.0), &circle, H),
            Err(Error::InsideCircle { .. })
        ));
        assert!(Circle::at(0.0, 0.0, FRAC_PI_2, E).is_err());
        assert!(Circle::at(1.5, 0.0, 0.1, H).is_err());
    }

    #[test]
    fn oracle_matches_formula() {
        let cases = [
            (
                H,
                Circle::at(0.0, 0.0, 0.5, H).unwrap(),
                point_at_distance(1.0, H),
            ),
            (
                E,
                Circle::at(0.0, 0.0, 0.3, E).unwrap(),
                point_at_distance(0.8, E),
            ),
            (
                H,
                Circle::at(0.3, -0.4, 0.2, H).unwrap(),
                HomogeneousPoint::chart(-0.5, 0.1),
            ),
            (
                E,
                Circle::at(-1.2, 0.7, 0.6, E).unwrap(),
                HomogeneousPoint::chart(2.0, 3.0),
            ),
        ];
        for (sign, circle, p) in cases {
            let formula = viewing_angle(&p, &circle, sign).unwrap();
            let oracle = viewing_angle_oracle(&p, &circle, sign).unwrap();
            assert!(
                (formula - oracle).abs() < 1e-9,
                "{sign}: {formula} vs {oracle}"
            );
        }
    }

    #[test]
    fn oracle_symmetric_configuration() {
        // P and centre on the x-axis: each tangent makes the same angle with the axis
        let circle = Circle::at(0.2, 0.0, 0.3, H).unwrap();
        let p = HomogeneousPoint::chart(-0.6, 0.0);
        let alpha = viewing_angle_oracle(&p, &circle, H).unwrap();
        let axis = p.join(circle.center()).unwrap();
        assert!(
            axis.projectively_eq(&crate::geometry::HomogeneousLine::new(0.0, 1.0, 0.0).unwrap())
        );
        assert!((alpha - viewing_angle(&p, &circle, H).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn equal_radii_give_bisector() {
        for sign in [H, E] {
            let c1 = Circle::at(0.3, 0.2, 0.25, sign).unwrap();
            let c2 = Circle::at(-0.25, -0.1, 0.25, sign).unwrap();
            let res = equioptic_curve(&c1, &c2, sign).unwrap();
            assert!(res.is_line());
            let pts = res.samples(64).unwrap();
            assert_eq!(pts.len(), 64);
            for p in pts {
                let d1 = distance(&p, c1.center(), sign).unwrap();
                let d2 = distance(&p, c2.center(), sign).unwrap();
                assert!((d1 - d2).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn canonical_input_has_identity_frame() {
        let spec = ApolloniusSpec::new(0.9, 0.6, H).unwrap();
        let f = canonical_foci(&spec);
        // S(r₁)/S(r₂) = 0.6
        let r2 = 0.5f64;
        let r1 = (0.6 * r2.sinh()).asinh();
        let c1 = Circle::at(f.a, 0.0, r1, H).unwrap();
        let c2 = Circle::at(f.b, 0.0, r2, H).unwrap();
        let res = equioptic_curve(&c1, &c2, H).unwrap();
        let m = res.frame.matrix() / res.frame.matrix()[(2, 2)];
        assert!((m - nalgebra::Matrix3::identity()).amax() < 1e-12);
        let q = res.curve.matrix() / res.curve.matrix()[(0, 0)];
        assert!((q - res.canonical.matrix()).amax() < 1e-12);
    }

    #[test]
    fn general_pair_has_equal_angles() {
        let c1 = Circle::at(0.3, 0.2, 0.4, H).unwrap();
        let c2 = Circle::at(-0.25, -0.1, 0.25, H).unwrap();
        let res = equioptic_curve(&c1, &c2, H).unwrap();
        let valid = res.valid_samples(64).unwrap();
        assert!(!valid.is_empty());
        for p in &valid {
            let a1 = viewing_angle(p, &c1, H).unwrap();
            let a2 = viewing_angle(p, &c2, H).unwrap();
            assert!((a1 - a2).abs() < 1e-9);
            let ratio = sine_ratio(p, c1.center(), c2.center(), H).unwrap();
            assert!((ratio - res.k).abs() < 1e-9);
            assert!(res.curve.residual(p) < 1e-12);
        }
    }

    #[test]
    fn concentric_is_degenerate() {
        let c1 = Circle::at(0.1, 0.1, 0.2, H).unwrap();
        let c2 = Circle::at(0.1, 0.1, 0.3, H).unwrap();
        assert_eq!(equioptic_curve(&c1, &c2, H).unwrap_err(), Error::Concentric);
    }

    #[test]
    fn filter_drops_points_inside_circles() {
        assert!(filter_valid_equioptic_points(
            &[],
            &Circle::at(0.0, 0.0, 0.1, H).unwrap(),
            &Circle::at(0.5, 0.0, 0.1, H).unwrap(),
            H
        )
        .is_empty());

        // small circles far from the curve: nothing is removed
        let c1 = Circle::at(0.3, 0.0, 0.05, H).unwrap();
        let c2 = Circle::at(-0.3, 0.0, 0.04, H).unwrap();
        let res = equioptic_curve(&c1, &c2, H).unwrap();
        let all = res.samples(64).unwrap();
        assert_eq!(res.valid_samples(64).unwrap().len(), all.len());

        // a large first circle swallows part of the curve
        let c1 = Circle::at(0.3, 0.0, 0.9, H).unwrap();
        let c2 = Circle::at(-0.3, 0.0, 0.1, H).unwrap();
        let res = equioptic_curve(&c1, &c2, H).unwrap();
        let all = res.samples(64).unwrap();
        let valid = res.valid_samples(64).unwrap();
        assert!(valid.len() < all.len());
    }
}
