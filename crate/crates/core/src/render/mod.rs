//! SVG scenes of the projective model.
//!
//! Hyperbolic scenes show the Beltrami–Klein disk with the absolute drawn
//! as the unit circle. Elliptic scenes show a square window of the
//! gnomonic chart.

mod figures;
mod svg;

pub use figures::{Figure, PENCIL_RATIOS};
pub use svg::{render_svg, CANVAS};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::document::{CurveDocument, EquiopticDocument};
use crate::equioptic::Circle;
use crate::error::{Error, Result};
use crate::geometry::{CurvatureSign, HomogeneousPoint};

/// Fixed stroke styles, addressed by label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Style {
    Absolute,
    Focus,
    Center,
    Circle,
    Curve,
    Pencil,
    Axis,
}

impl Style {
    pub fn label(self) -> &'static str {
        match self {
            Style::Absolute => "absolute",
            Style::Focus => "focus",
            Style::Center => "center",
            Style::Circle => "circle",
            Style::Curve => "curve",
            Style::Pencil => "pencil",
            Style::Axis => "axis",
        }
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Geometry of a scene element, in chart coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Shape {
    Point {
        at: [f64; 2],
    },
    MetricCircle {
        center: [f64; 2],
        radius: f64,
    },
    /// Points in curve-parameter order.
    ConicSamples {
        points: Vec<[f64; 2]>,
    },
    Line {
        coords: [f64; 3],
    },
    Absolute,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Element {
    #[serde(flatten)]
    pub shape: Shape,
    pub style: Style,
}

impl Element {
    pub fn new(shape: Shape, style: Style) -> Self {
        Self { shape, style }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
struct RawScene {
    sign: CurvatureSign,
    #[serde(default)]
    window: Option<f64>,
    #[serde(default)]
    elements: Vec<Element>,
}

/// A drawable scene. Hyperbolic scenes always contain the absolute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawScene")]
pub struct Scene {
    sign: CurvatureSign,
    window: f64,
    elements: Vec<Element>,
}

impl TryFrom<RawScene> for Scene {
    type Error = Error;

    fn try_from(raw: RawScene) -> Result<Self> {
        let mut scene = Scene::with_window(
            raw.sign,
            raw.window.unwrap_or(Scene::default_window(raw.sign)),
        )?;
        for element in raw.elements {
            scene.push(element);
        }
        Ok(scene)
    }
}

impl Scene {
    /// Half-width of the default chart window.
    pub fn default_window(sign: CurvatureSign) -> f64 {
        match sign {
            CurvatureSign::Hyperbolic => 1.05,
            CurvatureSign::Elliptic => 2.0,
        }
    }

    pub fn new(sign: CurvatureSign) -> Self {
        Self::with_window(sign, Self::default_window(sign)).expect("default window is positive")
    }

    pub fn with_window(sign: CurvatureSign, window: f64) -> Result<Self> {
        if !(window > 0.0 && window.is_finite()) {
            return Err(Error::OutOfRange {
                what: "window",
                value: window,
                expected: "window > 0",
            });
        }
        let mut elements = Vec::new();
        if sign == CurvatureSign::Hyperbolic {
            elements.push(Element::new(Shape::Absolute, Style::Absolute));
        }
        Ok(Self {
            sign,
            window,
            elements,
        })
    }

    pub fn sign(&self) -> CurvatureSign {
        self.sign
    }

    pub fn window(&self) -> f64 {
        self.window
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Adds an element; a second absolute is ignored, and elliptic scenes
    /// have none.
    pub fn push(&mut self, element: Element) {
        if element.shape == Shape::Absolute {
            return;
        }
        self.elements.push(element);
    }

    pub fn with(mut self, shape: Shape, style: Style) -> Self {
        self.push(Element::new(shape, style));
        self
    }

    /// Foci and samples of a curve document.
    pub fn from_curve_document(doc: &CurveDocument) -> Result<Self> {
        let scene = Self::new(doc.sign()?);
        Ok(scene
            .with(
                Shape::ConicSamples {
                    points: doc.samples.clone(),
                },
                Style::Curve,
            )
            .with(Shape::Point { at: [doc.a, 0.0] }, Style::Focus)
            .with(Shape::Point { at: [doc.b, 0.0] }, Style::Focus))
    }

    /// Circles, centres and samples of an equioptic document.
    pub fn from_equioptic_document(doc: &EquiopticDocument) -> Result<Self> {
        let mut scene = Self::new(doc.curve.sign()?);
        for c in &doc.circles {
            scene.push(Element::new(
                Shape::MetricCircle {
                    center: c.center,
                    radius: c.radius,
                },
                Style::Circle,
            ));
        }
        scene.push(Element::new(
            Shape::ConicSamples {
                points: doc.curve.samples.clone(),
            },
            Style::Curve,
        ));
        for c in &doc.circles {
            scene.push(Element::new(Shape::Point { at: c.center }, Style::Center));
        }
        Ok(scene)
    }
}

/// `n` points of a metric circle: the model circle of radius `T(r)` about
/// the origin, carried to the centre. Elliptic circles may reach the ideal
/// line, so the points are returned in homogeneous form.
pub fn metric_circle_locus(
    circle: &Circle,
    sign: CurvatureSign,
    n: usize,
) -> Result<Vec<HomogeneousPoint>> {
    if n < 8 {
        return Err(Error::OutOfRange {
            what: "circle sample count",
            value: n as f64,
            expected: "n >= 8",
        });
    }
    let frame = circle.frame(sign);
    Ok((0..n)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / n as f64;
            let (p, _) = circle.locus_at(&frame, theta, sign);
            HomogeneousPoint::from_vector(p).expect("isometry image is nonzero")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::distance;

    const H: CurvatureSign = CurvatureSign::Hyperbolic;
    const E: CurvatureSign = CurvatureSign::Elliptic;

    #[test]
    fn origin_circle_is_model_circle() {
        for sign in [H, E] {
            let circle = Circle::at(0.0, 0.0, 0.4, sign).unwrap();
            let t = sign.t(0.4).unwrap();
            for p in metric_circle_locus(&circle, sign, 32).unwrap() {
                let [x, y] = p.to_chart().unwrap();
                assert!((x.hypot(y) - t).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn off_centre_circle_measures_radius() {
        for (sign, x, r) in [(H, 0.5, 0.3), (E, 1.2, 0.5), (H, -0.9, 1.1)] {
            let circle = Circle::at(x, 0.2, r, sign).unwrap();
            let points = metric_circle_locus(&circle, sign, 64).unwrap();
            assert_eq!(points.len(), 64);
            for p in &points {
                assert!((distance(p, circle.center(), sign).unwrap() - r).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn exact_count_and_minimum() {
        let circle = Circle::at(0.1, 0.0, 0.2, H).unwrap();
        assert_eq!(metric_circle_locus(&circle, H, 8).unwrap().len(), 8);
        assert!(metric_circle_locus(&circle, H, 7).is_err());
    }

    #[test]
    fn hyperbolic_scene_keeps_one_absolute() {
        let scene = Scene::new(H).with(Shape::Absolute, Style::Absolute);
        assert_eq!(scene.elements().len(), 1);
        assert!(Scene::new(E).elements().is_empty());
        assert!(Scene::with_window(E, 0.0).is_err());
    }

    #[test]
    fn scene_json_restores_absolute() {
        let scene: Scene = serde_json::from_str(
            r#"{"sign":"hyperbolic","elements":[{"kind":"point","at":[0.1,0.2],"style":"focus"}]}"#,
        )
        .unwrap();
        assert_eq!(scene.elements()[0].shape, Shape::Absolute);
        assert_eq!(scene.elements().len(), 2);
        let text = serde_json::to_string(&scene).unwrap();
        assert_eq!(serde_json::from_str::<Scene>(&text).unwrap(), scene);
    }
}
