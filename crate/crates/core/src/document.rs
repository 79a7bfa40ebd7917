//! JSON documents for curves and equioptic results.
//!
//! Field names are part of the file format. Floats are written in shortest
//! round-trip form, so a document read back yields bit-identical samples.

use serde::{Deserialize, Serialize};

use crate::apollonius::{
    apollonius_curve, canonical_foci, classify, curve_center_coeff, sample_curve, ApolloniusSpec,
    ConicTag, CurveKind, QuadraticCurve,
};
use crate::equioptic::{Circle, EquiopticResult};
use crate::error::Result;
use crate::geometry::{CurvatureSign, HomogeneousPoint};

/// A generalized Apollonius curve in canonical position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveDocument {
    pub epsilon: i32,
    pub d: f64,
    pub k: f64,
    pub a: f64,
    pub b: f64,
    /// `None` in the line case.
    pub c: Option<f64>,
    pub kind: CurveKind,
    /// Line coordinates when `kind` is `line`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<[f64; 3]>,
    /// Row-major.
    pub matrix: [[f64; 3]; 3],
    pub class: ConicTag,
    pub absolute_intersections: u8,
    pub samples: Vec<[f64; 2]>,
}

impl CurveDocument {
    pub fn sign(&self) -> Result<CurvatureSign> {
        CurvatureSign::from_epsilon(self.epsilon)
    }
}

fn curve_fields(
    spec: &ApolloniusSpec,
    curve: &QuadraticCurve,
    samples: Vec<[f64; 2]>,
) -> Result<CurveDocument> {
    let foci = canonical_foci(spec);
    let class = classify(curve)?;
    let c = match curve.kind() {
        CurveKind::Conic => Some(curve_center_coeff(spec)?),
        CurveKind::Line => None,
    };
    let line = curve.line().map(|u| {
        let v = u.vector().normalize();
        [v.x, v.y, v.z]
    });
    Ok(CurveDocument {
        epsilon: spec.sign().epsilon_int(),
        d: spec.d(),
        k: spec.k(),
        a: foci.a,
        b: foci.b,
        c,
        kind: curve.kind(),
        line,
        matrix: curve.rows(),
        class: class.tag,
        absolute_intersections: class.absolute_intersections,
        samples,
    })
}

/// Builds, classifies and samples the canonical curve for `spec`.
pub fn curve_document(spec: &ApolloniusSpec, n: usize) -> Result<CurveDocument> {
    let curve = apollonius_curve(spec)?;
    let samples = sample_curve(&curve, n)?;
    curve_fields(spec, &curve, samples)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleDocument {
    pub center: [f64; 2],
    pub radius: f64,
}

impl CircleDocument {
    pub fn to_circle(&self, sign: CurvatureSign) -> Result<Circle> {
        Circle::at(self.center[0], self.center[1], self.radius, sign)
    }
}

/// An equioptic curve. `d`, `k`, `a`, `b`, `c` and the class describe the
/// canonical curve; `matrix` and the samples are in the input coordinates,
/// and `frame` maps input coordinates to canonical ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquiopticDocument {
    #[serde(flatten)]
    pub curve: CurveDocument,
    pub circles: [CircleDocument; 2],
    pub frame: [[f64; 3]; 3],
    pub valid_samples: Vec<[f64; 2]>,
    pub max_angle_residual: f64,
}

fn chart_points(points: &[HomogeneousPoint]) -> Vec<[f64; 2]> {
    points
        .iter()
        .filter_map(HomogeneousPoint::to_chart)
        .collect()
}

fn rows(m: &nalgebra::Matrix3<f64>) -> [[f64; 3]; 3] {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| m[(i, j)]))
}

fn circle_document(circle: &Circle) -> CircleDocument {
    let [x, y] = circle.center().to_chart().expect("proper centre");
    CircleDocument {
        center: [x, y],
        radius: circle.radius(),
    }
}

pub fn equioptic_document(result: &EquiopticResult, n: usize) -> Result<EquiopticDocument> {
    let samples = chart_points(&result.samples(n)?);
    let mut curve = curve_fields(&result.spec, &result.canonical, samples)?;
    curve.matrix = result.curve.rows();
    curve.line = result.curve.line().map(|u| {
        let v = u.vector().normalize();
        [v.x, v.y, v.z]
    });
    Ok(EquiopticDocument {
        curve,
        circles: result.circles.each_ref().map(circle_document),
        frame: rows(result.frame.matrix()),
        valid_samples: chart_points(&result.valid_samples(n)?),
        max_angle_residual: result.max_angle_residual(n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equioptic::equioptic_curve;

    const H: CurvatureSign = CurvatureSign::Hyperbolic;

    #[test]
    fn figure_one_left_document() {
        let spec = ApolloniusSpec::new(0.65, 2.0, H).unwrap();
        let doc = curve_document(&spec, 256).unwrap();
        assert_eq!(doc.epsilon, -1);
        assert_eq!(doc.class, ConicTag::Ellipse);
        assert!((doc.c.unwrap() + 0.46449835075096).abs() < 1e-12);
        assert_eq!(doc.samples.len(), 256);
        assert_eq!(doc.matrix[0][2], -doc.c.unwrap());
    }

    #[test]
    fn line_document_has_null_coefficient() {
        let spec = ApolloniusSpec::new(0.65, 1.0, H).unwrap();
        let doc = curve_document(&spec, 16).unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("\"c\":null"));
        assert!(text.contains("\"kind\":\"line\""));
        assert_eq!(doc.line.unwrap().map(f64::abs), [1.0, 0.0, 0.0]);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let spec = ApolloniusSpec::new(1.4, 0.3, H).unwrap();
        let doc = curve_document(&spec, 256).unwrap();
        let back: CurveDocument =
            serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn equioptic_document_round_trip() {
        let c1 = Circle::at(0.2, 0.1, 0.3, H).unwrap();
        let c2 = Circle::at(-0.4, 0.2, 0.5, H).unwrap();
        let doc = equioptic_document(&equioptic_curve(&c1, &c2, H).unwrap(), 128).unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        for key in [
            "\"epsilon\"",
            "\"circles\"",
            "\"frame\"",
            "\"valid_samples\"",
            "\"samples\"",
        ] {
            assert!(text.contains(key), "{key}");
        }
        let back: EquiopticDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert!(doc.max_angle_residual < 1e-9);
    }
}
