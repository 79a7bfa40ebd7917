use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::sign::CurvatureSign;
use crate::error::{Error, Result};
use crate::tolerances::{IDEAL_LINE, PROJECTIVE_EQUALITY, PROPERNESS};

/// Anything represented by a homogeneous coordinate triple.
pub trait Homogeneous {
    fn coords(&self) -> &Vector3<f64>;

    /// Projective equality: the normalized cross product vanishes.
    fn projectively_eq(&self, other: &Self) -> bool
    where
        Self: Sized,
    {
        let (a, b) = (self.coords(), other.coords());
        a.cross(b).norm() <= PROJECTIVE_EQUALITY * a.norm() * b.norm()
    }
}

/// `⟨x, y⟩ = x¹y¹ + x²y² + ε·x³y³` on the chosen representatives.
pub fn bilinear_form<H: Homogeneous>(x: &H, y: &H, sign: CurvatureSign) -> f64 {
    form(x.coords(), y.coords(), sign)
}

pub(crate) fn form(x: &Vector3<f64>, y: &Vector3<f64>, sign: CurvatureSign) -> f64 {
    x.x * y.x + x.y * y.y + sign.epsilon() * x.z * y.z
}

fn nonzero(v: Vector3<f64>) -> Result<Vector3<f64>> {
    if v.iter().all(|c| c.is_finite()) && v.norm() > 0.0 {
        Ok(v)
    } else {
        Err(Error::ZeroVector)
    }
}

/// A point `(x¹ : x² : x³)` of the projective plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct HomogeneousPoint(Vector3<f64>);

impl HomogeneousPoint {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        Self::from_vector(Vector3::new(x1, x2, x3))
    }

    pub fn from_vector(v: Vector3<f64>) -> Result<Self> {
        nonzero(v).map(Self)
    }

    /// The chart point `(x : y : 1)`.
    pub fn chart(x: f64, y: f64) -> Self {
        Self(Vector3::new(x, y, 1.0))
    }

    pub fn origin() -> Self {
        Self::chart(0.0, 0.0)
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.0
    }

    pub fn is_ideal(&self) -> bool {
        self.0.z.abs() <= IDEAL_LINE * self.0.norm()
    }

    /// Affine chart coordinates `(x¹/x³, x²/x³)`, or `None` on the ideal line.
    pub fn to_chart(&self) -> Option<[f64; 2]> {
        if self.is_ideal() {
            None
        } else {
            Some([self.0.x / self.0.z, self.0.y / self.0.z])
        }
    }

    /// Representative with `x³ = 1`.
    pub fn normalized(&self) -> Option<Self> {
        self.to_chart().map(|[x, y]| Self::chart(x, y))
    }

    /// `ε⟨x,x⟩ > 0` after normalizing to the chart, with a small margin.
    pub fn is_proper(&self, sign: CurvatureSign) -> bool {
        match self.normalized() {
            Some(n) => sign.epsilon() * form(&n.0, &n.0, sign) > PROPERNESS,
            None => false,
        }
    }

    pub(crate) fn require_proper(&self, sign: CurvatureSign) -> Result<Self> {
        self.normalized()
            .filter(|n| sign.epsilon() * form(&n.0, &n.0, sign) > PROPERNESS)
            .ok_or(Error::ImproperPoint {
                coords: self.into(),
                geometry: sign.name(),
            })
    }

    /// The line through `self` and `other`.
    pub fn join(&self, other: &Self) -> Result<HomogeneousLine> {
        HomogeneousLine::from_vector(self.0.cross(&other.0)).map_err(|_| Error::CoincidentPoints)
    }

    pub fn is_on(&self, line: &HomogeneousLine) -> bool {
        self.0.dot(&line.0).abs() <= PROJECTIVE_EQUALITY * self.0.norm() * line.0.norm()
    }
}

impl Homogeneous for HomogeneousPoint {
    fn coords(&self) -> &Vector3<f64> {
        &self.0
    }
}

impl From<&HomogeneousPoint> for [f64; 3] {
    fn from(p: &HomogeneousPoint) -> Self {
        [p.0.x, p.0.y, p.0.z]
    }
}

impl From<HomogeneousPoint> for [f64; 3] {
    fn from(p: HomogeneousPoint) -> Self {
        (&p).into()
    }
}

impl TryFrom<[f64; 3]> for HomogeneousPoint {
    type Error = Error;

    fn try_from(c: [f64; 3]) -> Result<Self> {
        Self::new(c[0], c[1], c[2])
    }
}

/// A line `(u₁ : u₂ : u₃)`, incident with the points `x` where `x·u = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct HomogeneousLine(Vector3<f64>);

impl HomogeneousLine {
    pub fn new(u1: f64, u2: f64, u3: f64) -> Result<Self> {
        Self::from_vector(Vector3::new(u1, u2, u3))
    }

    pub fn from_vector(v: Vector3<f64>) -> Result<Self> {
        nonzero(v).map(Self)
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.0
    }

    /// Proper lines have `⟨u,u⟩ > 0` in the dual form. In the hyperbolic
    /// plane this says the line meets the interior of the absolute; in the
    /// elliptic plane every line passes.
    pub fn is_proper(&self, sign: CurvatureSign) -> bool {
        form(&self.0, &self.0, sign) > PROPERNESS * self.0.norm_squared()
    }

    fn require_proper(&self, sign: CurvatureSign) -> Result<()> {
        if self.is_proper(sign) {
            Ok(())
        } else {
            Err(Error::ImproperLine {
                coords: [self.0.x, self.0.y, self.0.z],
                geometry: sign.name(),
            })
        }
    }

    /// Intersection point of two lines.
    pub fn meet(&self, other: &Self) -> Result<HomogeneousPoint> {
        HomogeneousPoint::from_vector(self.0.cross(&other.0)).map_err(|_| Error::CoincidentPoints)
    }
}

impl Homogeneous for HomogeneousLine {
    fn coords(&self) -> &Vector3<f64> {
        &self.0
    }
}

impl From<HomogeneousLine> for [f64; 3] {
    fn from(u: HomogeneousLine) -> Self {
        [u.0.x, u.0.y, u.0.z]
    }
}

impl TryFrom<[f64; 3]> for HomogeneousLine {
    type Error = Error;

    fn try_from(c: [f64; 3]) -> Result<Self> {
        Self::new(c[0], c[1], c[2])
    }
}

/// Generalized cosine and sine of the distance between two proper points.
///
/// The cosine comes straight from the normalized form; the sine uses
/// `⟨x,x⟩⟨y,y⟩ − ⟨x,y⟩² = ε⟨x×y, x×y⟩`, which stays accurate for nearby
/// points where `1 − C²` would cancel.
fn trig_of_distance(
    x: &HomogeneousPoint,
    y: &HomogeneousPoint,
    sign: CurvatureSign,
) -> Result<(f64, f64)> {
    let x = x.require_proper(sign)?.0;
    let y = y.require_proper(sign)?.0;
    let norm = (form(&x, &x, sign) * form(&y, &y, sign)).sqrt();
    let cosine = sign.epsilon() * form(&x, &y, sign) / norm;
    let w = x.cross(&y);
    let sine = form(&w, &w, sign).max(0.0).sqrt() / norm;
    Ok((cosine, sine))
}

/// Geodesic distance between two proper points.
///
/// Scale-invariant in both arguments. Elliptic distances are folded into
/// `[0, π/2]`.
pub fn distance(x: &HomogeneousPoint, y: &HomogeneousPoint, sign: CurvatureSign) -> Result<f64> {
    let (cosine, sine) = trig_of_distance(x, y, sign)?;
    Ok(match sign {
        CurvatureSign::Hyperbolic => {
            if cosine < 1.0 - crate::tolerances::INVERSE_TRIG_CLAMP {
                return Err(Error::NumericalDomain {
                    function: "acosh",
                    value: cosine,
                });
            }
            sine.asinh()
        }
        CurvatureSign::Elliptic => sine.atan2(cosine.abs()),
    })
}

/// Distance evaluated through the inverse generalized cosine only, with
/// clamping of floating-point overshoot. Less accurate than [`distance`] for
/// nearby points; kept as an independent route.
pub fn distance_from_cosine(
    x: &HomogeneousPoint,
    y: &HomogeneousPoint,
    sign: CurvatureSign,
) -> Result<f64> {
    let (cosine, _) = trig_of_distance(x, y, sign)?;
    sign.c_inv(cosine)
}

/// `S(d(X, Y))` without going through the distance itself.
pub fn sin_distance(
    x: &HomogeneousPoint,
    y: &HomogeneousPoint,
    sign: CurvatureSign,
) -> Result<f64> {
    trig_of_distance(x, y, sign).map(|(_, s)| s)
}

/// Unsigned angle in `[0, π/2]` between two proper lines.
pub fn line_angle(u: &HomogeneousLine, v: &HomogeneousLine, sign: CurvatureSign) -> Result<f64> {
    u.require_proper(sign)?;
    v.require_proper(sign)?;
    let (a, b) = (&u.0, &v.0);
    let norm = (form(a, a, sign) * form(b, b, sign)).sqrt();
    let cosine = (sign.epsilon() * form(a, b, sign) / norm).abs();
    let w = a.cross(b);
    let sine = (sign.epsilon() * form(&w, &w, sign)).max(0.0).sqrt() / norm;
    Ok(sine.atan2(cosine))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    const H: CurvatureSign = CurvatureSign::Hyperbolic;
    const E: CurvatureSign = CurvatureSign::Elliptic;

    #[test]
    fn bilinear_examples() {
        let ex = HomogeneousPoint::new(1.0, 0.0, 0.0).unwrap();
        let ey = HomogeneousPoint::new(0.0, 1.0, 0.0).unwrap();
        for sign in CurvatureSign::ALL {
            assert_eq!(bilinear_form(&ex, &ey, sign), 0.0);
        }
        let o = HomogeneousPoint::origin();
        assert_eq!(bilinear_form(&o, &o, H), -1.0);
        let x = HomogeneousPoint::chart(0.3, 0.4);
        let y = HomogeneousPoint::chart(0.1, -0.2);
        assert!((bilinear_form(&x, &y, H) - (-1.05)).abs() < 1e-15);
    }

    #[test]
    fn zero_vector_rejected() {
        assert_eq!(HomogeneousPoint::new(0.0, 0.0, 0.0), Err(Error::ZeroVector));
        assert!(HomogeneousLine::new(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn properness() {
        assert!(HomogeneousPoint::chart(0.5, 0.5).is_proper(H));
        assert!(!HomogeneousPoint::chart(0.8, 0.8).is_proper(H));
        assert!(!HomogeneousPoint::chart(1.0, 0.0).is_proper(H));
        assert!(HomogeneousPoint::chart(100.0, -3.0).is_proper(E));
        assert!(!HomogeneousPoint::new(1.0, 1.0, 0.0).unwrap().is_proper(E));
        // scale does not matter
        assert!(HomogeneousPoint::new(-1.0, -1.0, -4.0)
            .unwrap()
            .is_proper(H));
    }

    #[test]
    fn distance_examples() {
        let o = HomogeneousPoint::origin();
        assert_eq!(distance(&o, &o, H).unwrap(), 0.0);
        let y = HomogeneousPoint::chart(1f64.tanh(), 0.0);
        assert!((distance(&o, &y, H).unwrap() - 1.0).abs() < 1e-14);
        let y = HomogeneousPoint::chart(0.4f64.tan(), 0.0);
        assert!((distance(&o, &y, E).unwrap() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn distance_routes_agree() {
        let x = HomogeneousPoint::chart(0.31, -0.2);
        let y = HomogeneousPoint::chart(-0.5, 0.42);
        for sign in CurvatureSign::ALL {
            let a = distance(&x, &y, sign).unwrap();
            let b = distance_from_cosine(&x, &y, sign).unwrap();
            assert!((a - b).abs() < 1e-12, "{sign}: {a} vs {b}");
        }
    }

    #[test]
    fn distance_improper_errors() {
        let o = HomogeneousPoint::origin();
        let outside = HomogeneousPoint::chart(2.0, 0.0);
        assert!(matches!(
            distance(&o, &outside, H),
            Err(Error::ImproperPoint { .. })
        ));
    }

    #[test]
    fn elliptic_distance_is_folded() {
        // chart points on opposite sides, true angle > π/2 between representatives
        let x = HomogeneousPoint::chart(3.0, 0.0);
        let y = HomogeneousPoint::chart(-3.0, 0.0);
        let d = distance(&x, &y, E).unwrap();
        assert!(d <= FRAC_PI_2);
        // angle between (3,0,1) and (-3,0,1) is 2·atan(3) > π/2, folded to π − 2·atan(3)
        assert!((d - (std::f64::consts::PI - 2.0 * 3f64.atan())).abs() < 1e-14);
    }

    #[test]
    fn line_angle_examples() {
        let u = HomogeneousLine::new(1.0, 0.0, 0.0).unwrap();
        let v = HomogeneousLine::new(0.0, 1.0, 0.0).unwrap();
        let w = HomogeneousLine::new(1.0, 1.0, 0.0).unwrap();
        for sign in CurvatureSign::ALL {
            assert_eq!(line_angle(&u, &u, sign).unwrap(), 0.0);
            assert!((line_angle(&u, &v, sign).unwrap() - FRAC_PI_2).abs() < 1e-15);
        }
        assert!((line_angle(&u, &w, H).unwrap() - FRAC_PI_4).abs() < 1e-15);
        // a line outside the disk is not proper
        let far = HomogeneousLine::new(1.0, 0.0, -2.0).unwrap();
        assert!(line_angle(&u, &far, H).is_err());
    }

    #[test]
    fn incidence_and_join() {
        let p = HomogeneousPoint::chart(0.2, 0.1);
        let q = HomogeneousPoint::chart(-0.3, 0.4);
        let l = p.join(&q).unwrap();
        assert!(p.is_on(&l) && q.is_on(&l));
        assert_eq!(p.join(&p), Err(Error::CoincidentPoints));
        let m = HomogeneousLine::new(1.0, 0.0, 0.0).unwrap();
        let x = l.meet(&m).unwrap();
        assert!(x.is_on(&l) && x.is_on(&m));
    }

    #[test]
    fn projective_equality() {
        let p = HomogeneousPoint::new(1.0, 2.0, 3.0).unwrap();
        let q = HomogeneousPoint::new(-2.0, -4.0, -6.0).unwrap();
        assert!(p.projectively_eq(&q));
        assert!(!p.projectively_eq(&HomogeneousPoint::new(1.0, 2.0, 3.1).unwrap()));
    }
}
