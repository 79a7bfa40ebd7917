//! Preset scenes for the four captioned parameter pairs.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use super::{Element, Scene, Shape, Style};
use crate::apollonius::ApolloniusSpec;
use crate::document::curve_document;
use crate::error::{Error, Result};
use crate::geometry::CurvatureSign;

/// Ratios of the lighter background curves. These are illustrative only:
/// members of the parabolic pencil that shares the origin and the tangent
/// `x = 0` with the highlighted curve.
pub const PENCIL_RATIOS: [f64; 8] = [0.2, 0.35, 0.5, 0.7, 1.4, 2.0, 2.9, 5.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    HyperbolicEllipse,
    HyperbolicSemiHyperbola,
    EllipticNear,
    EllipticQuarter,
}

impl Figure {
    pub const ALL: [Figure; 4] = [
        Figure::HyperbolicEllipse,
        Figure::HyperbolicSemiHyperbola,
        Figure::EllipticNear,
        Figure::EllipticQuarter,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Figure::HyperbolicEllipse => "1l",
            Figure::HyperbolicSemiHyperbola => "1r",
            Figure::EllipticNear => "2l",
            Figure::EllipticQuarter => "2r",
        }
    }

    pub fn spec(self) -> ApolloniusSpec {
        let (d, k, sign) = match self {
            Figure::HyperbolicEllipse => (0.65, 2.0, CurvatureSign::Hyperbolic),
            Figure::HyperbolicSemiHyperbola => (1.4, 0.3, CurvatureSign::Hyperbolic),
            Figure::EllipticNear => (0.8, 0.5, CurvatureSign::Elliptic),
            Figure::EllipticQuarter => (FRAC_PI_2, 0.7, CurvatureSign::Elliptic),
        };
        ApolloniusSpec::new(d, k, sign).expect("preset parameters are valid")
    }

    /// Tangent axis, pencil members, then the highlighted curve and foci.
    pub fn scene(self, n: usize) -> Result<Scene> {
        let spec = self.spec();
        let sign = spec.sign();
        let mut scene = Scene::new(sign).with(
            Shape::Line {
                coords: [1.0, 0.0, 0.0],
            },
            Style::Axis,
        );
        for k in PENCIL_RATIOS.into_iter().filter(|&k| k != spec.k()) {
            let member = curve_document(&ApolloniusSpec::new(spec.d(), k, sign)?, n)?;
            scene.push(Element::new(
                Shape::ConicSamples {
                    points: member.samples,
                },
                Style::Pencil,
            ));
        }
        let main = Scene::from_curve_document(&curve_document(&spec, n)?)?;
        for element in main.elements().iter().cloned() {
            scene.push(element);
        }
        Ok(scene)
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or(Error::OutOfRange {
                what: "figure",
                value: f64::NAN,
                expected: "one of 1l, 1r, 2l, 2r",
            })
    }
}
