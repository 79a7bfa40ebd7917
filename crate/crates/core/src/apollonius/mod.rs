//! Generalized Apollonius curves.
//!
//! For foci `A`, `B` and ratio `k > 0` the curve is the locus of points `P`
//! with `S(d(A,P)) / S(d(B,P)) = k`, the ratio of the circumferences of the
//! circles about `P` through `A` and through `B`. After moving the foci to
//! `(a:0:1)` and `(b:0:1)` with the origin on the locus, the curve is the
//! model circle `x² + y² − 2c·x = 0` with `c = k·S(d) / (1 − k²)`.

mod classify;
mod conic;

pub use classify::{
    absolute_intersections, canonical_coefficient, classify, ideal_line_intersections,
    reduction_count, ConicClass, ConicTag,
};
pub use conic::{
    conic_samples_in_frame, sample_curve, sample_curve_points, CurveKind, QuadraticCurve,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{sin_distance, CurvatureSign, HomogeneousLine, HomogeneousPoint};
use crate::tolerances::{COEFFICIENT_AGREEMENT, COEFFICIENT_IDENTITY, LINE_CASE};

/// Distance between the foci, circumference ratio and geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApolloniusSpec {
    d: f64,
    k: f64,
    sign: CurvatureSign,
}

impl ApolloniusSpec {
    /// Elliptic specs accept `d` up to and including `π/2`: at `π/2` the
    /// canonical foci `a = k`, `b = −1/k` are still finite chart points.
    pub fn new(d: f64, k: f64, sign: CurvatureSign) -> Result<Self> {
        validate_distance(d, sign)?;
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::OutOfRange {
                what: "k",
                value: k,
                expected: "k > 0",
            });
        }
        Ok(Self { d, k, sign })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn sign(&self) -> CurvatureSign {
        self.sign
    }

    /// Specs this close to `k = 1` are treated as the bisector line.
    pub fn is_line_case(&self) -> bool {
        (self.k - 1.0).abs() < LINE_CASE
    }
}

pub(crate) fn validate_distance(d: f64, sign: CurvatureSign) -> Result<()> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::OutOfRange {
            what: "d",
            value: d,
            expected: "d > 0",
        });
    }
    if let Some(max) = sign.max_focal_distance() {
        if d > max + 1e-12 {
            return Err(Error::OutOfRange {
                what: "d",
                value: d,
                expected: "d <= π/2 in the elliptic plane",
            });
        }
    }
    Ok(())
}

/// Chart abscissas of the foci in canonical position, `a > 0 > b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalFoci {
    pub a: f64,
    pub b: f64,
}

impl CanonicalFoci {
    /// `a = k·S(d) / (1 + k·C(d))`, `b = −S(d) / (C(d) + k)`.
    pub fn from_distance(d: f64, k: f64, sign: CurvatureSign) -> Result<Self> {
        let spec = ApolloniusSpec::new(d, k, sign)?;
        Ok(canonical_foci(&spec))
    }

    pub fn points(&self) -> (HomogeneousPoint, HomogeneousPoint) {
        (
            HomogeneousPoint::chart(self.a, 0.0),
            HomogeneousPoint::chart(self.b, 0.0),
        )
    }
}

pub fn canonical_foci(spec: &ApolloniusSpec) -> CanonicalFoci {
    let (s, c) = (spec.sign.s(spec.d), spec.sign.c(spec.d));
    let k = spec.k;
    CanonicalFoci {
        a: k * s / (1.0 + k * c),
        b: -s / (c + k),
    }
}

/// `c = k·S(d) / (1 − k²)`, the centre abscissa of the canonical curve.
pub fn curve_center_coeff(spec: &ApolloniusSpec) -> Result<f64> {
    if spec.k == 1.0 {
        return Err(Error::Pole {
            function: "k·S(d)/(1 − k²)",
            at: 1.0,
        });
    }
    Ok(spec.k * spec.sign.s(spec.d) / (1.0 - spec.k * spec.k))
}

/// The same coefficient expressed through the foci:
/// `[a(1+εb²) − k²b(1+εa²)] / [(1−k²)(1+εa²)(1+εb²)]`.
pub fn foci_form_coeff(foci: &CanonicalFoci, k: f64, sign: CurvatureSign) -> f64 {
    let e = sign.epsilon();
    let (a, b) = (foci.a, foci.b);
    let (ga, gb) = (1.0 + e * a * a, 1.0 + e * b * b);
    (a * gb - k * k * b * ga) / ((1.0 - k * k) * ga * gb)
}

/// Residuals of `a²/(1+εa²) = k²b²/(1+εb²)` and
/// `1/(1+εa²) − k²/(1+εb²) = 1 − k²`.
pub fn coefficient_identity_residuals(a: f64, b: f64, k: f64, sign: CurvatureSign) -> (f64, f64) {
    let e = sign.epsilon();
    let (ga, gb) = (1.0 + e * a * a, 1.0 + e * b * b);
    let k2 = k * k;
    let origin_on_curve = a * a / ga - k2 * b * b / gb;
    let x2_coefficient = 1.0 / ga - k2 / gb - (1.0 - k2);
    (origin_on_curve.abs(), x2_coefficient.abs())
}

pub fn coefficient_identity_check(a: f64, b: f64, k: f64, sign: CurvatureSign) -> bool {
    let (r1, r2) = coefficient_identity_residuals(a, b, k, sign);
    r1 < COEFFICIENT_IDENTITY && r2 < COEFFICIENT_IDENTITY
}

/// Builds the curve in canonical position.
///
/// For `|k − 1|` below the line threshold the result is the line `x = 0`.
/// Otherwise the distance-form coefficient is cross-checked against the
/// foci form before the conic is returned.
pub fn apollonius_curve(spec: &ApolloniusSpec) -> Result<QuadraticCurve> {
    if spec.is_line_case() {
        let axis = HomogeneousLine::new(1.0, 0.0, 0.0)?;
        return Ok(QuadraticCurve::from_line(&axis, spec.sign));
    }
    let c = curve_center_coeff(spec)?;
    let from_foci = foci_form_coeff(&canonical_foci(spec), spec.k, spec.sign);
    if (from_foci - c).abs() > COEFFICIENT_AGREEMENT * c.abs().max(1.0) {
        return Err(Error::CoefficientMismatch {
            from_foci,
            from_distance: c,
        });
    }
    Ok(QuadraticCurve::canonical(c, spec.sign))
}

/// `S(d(A,P)) / S(d(B,P))`, the circumference ratio of the circles about `P`
/// through `A` and `B`.
pub fn sine_ratio(
    p: &HomogeneousPoint,
    a: &HomogeneousPoint,
    b: &HomogeneousPoint,
    sign: CurvatureSign,
) -> Result<f64> {
    let num = sin_distance(a, p, sign)?;
    let den = sin_distance(b, p, sign)?;
    if den == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{distance, Homogeneous};
    use std::f64::consts::FRAC_PI_2;

    const H: CurvatureSign = CurvatureSign::Hyperbolic;
    const E: CurvatureSign = CurvatureSign::Elliptic;

    fn spec(d: f64, k: f64, sign: CurvatureSign) -> ApolloniusSpec {
        ApolloniusSpec::new(d, k, sign).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(ApolloniusSpec::new(0.0, 2.0, H).is_err());
        assert!(ApolloniusSpec::new(1.0, 0.0, H).is_err());
        assert!(ApolloniusSpec::new(1.6, 2.0, E).is_err());
        assert!(ApolloniusSpec::new(FRAC_PI_2, 0.7, E).is_ok());
        assert!(ApolloniusSpec::new(5.0, 0.7, H).is_ok());
    }

    #[test]
    fn foci_figure_one_left() {
        let f = canonical_foci(&spec(0.65, 2.0, H));
        // mpmath, 30 digits
        assert!((f.a - 0.405_370_165_776_159_05).abs() < 1e-15);
        assert!((f.b - -0.216_462_338_697_366_66).abs() < 1e-15);
    }

    #[test]
    fn foci_symmetric_at_k_one() {
        for sign in [H, E] {
            let f = canonical_foci(&spec(0.9, 1.0, sign));
            assert!((f.a + f.b).abs() < 1e-16);
            assert!((f.a - sign.s(0.9) / (sign.c(0.9) + 1.0)).abs() < 1e-16);
        }
    }

    #[test]
    fn foci_distance_and_ratio() {
        for sign in [H, E] {
            for (d, k) in [(0.3, 0.2), (1.2, 3.0), (1.5, 0.9)] {
                let f = canonical_foci(&spec(d, k, sign));
                let (a, b) = f.points();
                assert!(f.a > 0.0 && f.b < 0.0);
                assert!((distance(&a, &b, sign).unwrap() - d).abs() < 1e-12);
                let o = HomogeneousPoint::origin();
                assert!((sine_ratio(&o, &a, &b, sign).unwrap() - k).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn center_coefficient_values() {
        let c = curve_center_coeff(&spec(0.65, 2.0, H)).unwrap();
        assert!((c - -0.464_498_350_750_96).abs() < 1e-15);
        let c = curve_center_coeff(&spec(1.4, 0.3, H)).unwrap();
        assert!((c - 0.627_791_703_775_231).abs() < 1e-15);
        let c = curve_center_coeff(&spec(FRAC_PI_2, 0.7, E)).unwrap();
        assert!((c - 1.372_549_019_607_843_1).abs() < 1e-15);
        let c = curve_center_coeff(&spec(0.8, 1e-9, H)).unwrap();
        assert!(c.abs() < 1e-9);
        assert!(matches!(
            curve_center_coeff(&spec(0.8, 1.0, H)),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn identity_check() {
        let f = canonical_foci(&spec(0.65, 2.0, H));
        assert!(coefficient_identity_check(f.a, f.b, 2.0, H));
        assert!(!coefficient_identity_check(f.a + 1e-3, f.b, 2.0, H));
        let f = canonical_foci(&spec(0.65, 1.0, E));
        assert!(coefficient_identity_check(f.a, -f.a, 1.0, E));
    }

    #[test]
    fn curve_line_case() {
        let curve = apollonius_curve(&spec(0.7, 1.0, H)).unwrap();
        assert_eq!(curve.kind(), CurveKind::Line);
        let axis = HomogeneousLine::new(1.0, 0.0, 0.0).unwrap();
        assert!(curve.line().unwrap().projectively_eq(&axis));
        let near = apollonius_curve(&spec(0.7, 1.0 + 1e-10, H)).unwrap();
        assert_eq!(near.kind(), CurveKind::Line);
    }

    #[test]
    fn curve_contains_origin() {
        for sign in [H, E] {
            for k in [0.1, 0.5, 2.0, 7.0] {
                let curve = apollonius_curve(&spec(0.5, k, sign)).unwrap();
                assert_eq!(curve.evaluate(&HomogeneousPoint::origin()), 0.0);
            }
        }
    }

    #[test]
    fn classification_examples() {
        let ellipse = classify(&apollonius_curve(&spec(0.65, 2.0, H)).unwrap()).unwrap();
        assert_eq!(ellipse.tag, ConicTag::Ellipse);
        let semi = classify(&apollonius_curve(&spec(1.4, 0.3, H)).unwrap()).unwrap();
        assert_eq!(semi.tag, ConicTag::SemiHyperbola);
        assert_eq!(semi.absolute_intersections, 2);
        // k·sinh d = (1 − k²)/2 with k = 1/2 ⇒ sinh d = 3/4
        let para = classify(&apollonius_curve(&spec(0.75f64.asinh(), 0.5, H)).unwrap()).unwrap();
        assert_eq!(para.tag, ConicTag::Paracycle);
        assert_eq!(para.absolute_intersections, 1);
    }

    #[test]
    fn sine_ratio_special_points() {
        let f = canonical_foci(&spec(0.9, 1.5, H));
        let (a, b) = f.points();
        assert_eq!(sine_ratio(&a, &a, &b, H).unwrap(), 0.0);
        assert_eq!(sine_ratio(&b, &a, &b, H), Err(Error::CoincidentPoints));
        let sym = canonical_foci(&spec(0.9, 1.0, H));
        let (a, b) = sym.points();
        let p = HomogeneousPoint::chart(0.0, 0.37);
        assert!((sine_ratio(&p, &a, &b, H).unwrap() - 1.0).abs() < 1e-14);
    }
}
