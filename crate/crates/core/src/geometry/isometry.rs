use nalgebra::{Matrix3, Vector3};
use rand::Rng;

use super::point::{distance, HomogeneousLine, HomogeneousPoint};
use super::sign::CurvatureSign;
use crate::apollonius::CanonicalFoci;
use crate::error::{Error, Result};

/// A projective map preserving the form `diag(1, 1, ε)` up to scale.
///
/// Points map by `x ↦ M·x`, lines by `u ↦ M⁻ᵀ·u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    matrix: Matrix3<f64>,
    inverse: Matrix3<f64>,
}

pub(crate) fn form_matrix(sign: CurvatureSign) -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, sign.epsilon()))
}

impl Isometry {
    pub fn identity() -> Self {
        Self {
            matrix: Matrix3::identity(),
            inverse: Matrix3::identity(),
        }
    }

    /// Wraps a matrix, checking that it is invertible and preserves the form
    /// to within `tol` (entrywise, after normalizing the scale).
    pub fn from_matrix(matrix: Matrix3<f64>, sign: CurvatureSign, tol: f64) -> Result<Self> {
        let inverse = matrix.try_inverse().ok_or(Error::OutOfRange {
            what: "determinant",
            value: 0.0,
            expected: "an invertible matrix",
        })?;
        let iso = Self { matrix, inverse };
        let defect = iso.form_defect(sign);
        if !(defect <= tol) {
            return Err(Error::OutOfRange {
                what: "form defect",
                value: defect,
                expected: "matrix preserving diag(1, 1, ε) up to scale",
            });
        }
        Ok(iso)
    }

    /// Moves the origin a signed distance `t` along the x-axis.
    pub fn translation_along_x(t: f64, sign: CurvatureSign) -> Self {
        let (c, s) = (sign.c(t), sign.s(t));
        // ε = −1: boost in the (x¹, x³) plane; ε = +1: rotation in that plane.
        let e = -sign.epsilon();
        let matrix = Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, e * s, 0.0, c);
        let inverse = Matrix3::new(c, 0.0, -s, 0.0, 1.0, 0.0, -e * s, 0.0, c);
        Self { matrix, inverse }
    }

    pub fn rotation_about_origin(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let matrix = Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0);
        Self {
            matrix,
            inverse: matrix.transpose(),
        }
    }

    /// The isometry taking the origin to `p`: a translation along the x-axis
    /// followed by a rotation.
    pub fn from_origin(p: &HomogeneousPoint, sign: CurvatureSign) -> Result<Self> {
        let [x, y] = p
            .require_proper(sign)?
            .to_chart()
            .expect("proper points lie in the chart");
        let rho = x.hypot(y);
        if rho == 0.0 {
            return Ok(Self::identity());
        }
        let s = sign.t_inv(rho)?;
        Ok(Self::rotation_about_origin(y.atan2(x)).compose(&Self::translation_along_x(s, sign)))
    }

    pub fn to_origin(p: &HomogeneousPoint, sign: CurvatureSign) -> Result<Self> {
        Self::from_origin(p, sign).map(|m| m.inverse())
    }

    /// A random orientation-preserving isometry `R(θ₁)·T(t)·R(θ₂)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, sign: CurvatureSign) -> Self {
        let reach = match sign {
            CurvatureSign::Hyperbolic => 1.2,
            CurvatureSign::Elliptic => 0.7,
        };
        let a = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let b = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let t = rng.random_range(-reach..reach);
        Self::rotation_about_origin(a)
            .compose(&Self::translation_along_x(t, sign))
            .compose(&Self::rotation_about_origin(b))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix3<f64> {
        &self.inverse
    }

    pub fn inverse(&self) -> Self {
        Self {
            matrix: self.inverse,
            inverse: self.matrix,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix * other.matrix,
            inverse: other.inverse * self.inverse,
        }
    }

    pub fn apply(&self, p: &HomogeneousPoint) -> HomogeneousPoint {
        HomogeneousPoint::from_vector(self.matrix * p.vector())
            .expect("invertible maps send nonzero vectors to nonzero vectors")
    }

    pub fn apply_line(&self, u: &HomogeneousLine) -> HomogeneousLine {
        HomogeneousLine::from_vector(self.inverse.transpose() * u.vector())
            .expect("invertible maps send nonzero vectors to nonzero vectors")
    }

    /// Maximum entry of `|MᵀEM − λE|`, with `λ` fixed by the (3,3) entry and
    /// everything scaled so that `|λ| = 1`.
    pub fn form_defect(&self, sign: CurvatureSign) -> f64 {
        let e = form_matrix(sign);
        let g = self.matrix.transpose() * e * self.matrix;
        let lambda = g[(2, 2)] / sign.epsilon();
        if lambda == 0.0 {
            return f64::INFINITY;
        }
        ((g - e * lambda) / lambda.abs()).amax()
    }
}

/// The isometry carrying `c1` to `(a:0:1)` and `c2` to `(b:0:1)`, where
/// `a > 0 > b` are the canonical abscissas for ratio `k` at the distance
/// between the two points. The origin then sits on the Apollonius locus.
pub fn move_pair_to_canonical(
    c1: &HomogeneousPoint,
    c2: &HomogeneousPoint,
    k: f64,
    sign: CurvatureSign,
) -> Result<(Isometry, f64, f64)> {
    let d = distance(c1, c2, sign)?;
    if d <= 1e-12 {
        return Err(Error::CoincidentPoints);
    }
    let foci = CanonicalFoci::from_distance(d, k, sign)?;

    let to_c1 = Isometry::to_origin(c1, sign)?;
    // c2 may sit on the ideal line when d = π/2 in the elliptic plane, so read
    // its direction off the homogeneous coordinates.
    let v = to_c1.apply(c2).vector();
    let orient = if v.z < 0.0 { -1.0 } else { 1.0 };
    let phi = (orient * v.y).atan2(orient * v.x);
    let align = Isometry::rotation_about_origin(std::f64::consts::PI - phi);
    let shift = Isometry::translation_along_x(sign.t_inv(foci.a)?, sign);

    Ok((shift.compose(&align).compose(&to_c1), foci.a, foci.b))
}

/// The isometry taking a proper line onto the y-axis `x = 0`, with the foot
/// of the perpendicular from the origin going to the origin.
pub fn line_to_axis(u: &HomogeneousLine, sign: CurvatureSign) -> Result<Isometry> {
    if !u.is_proper(sign) {
        return Err(Error::ImproperLine {
            coords: (*u).into(),
            geometry: sign.name(),
        });
    }
    let v = u.vector();
    let n2 = v.x * v.x + v.y * v.y;
    if n2 == 0.0 {
        return Err(Error::ImproperLine {
            coords: (*u).into(),
            geometry: sign.name(),
        });
    }
    let foot = HomogeneousPoint::chart(-v.z * v.x / n2, -v.z * v.y / n2);
    let to_foot = Isometry::to_origin(&foot, sign)?;
    let u0 = to_foot.apply_line(u).vector();
    // u0 passes through the origin; turn its normal onto the x-axis
    Ok(Isometry::rotation_about_origin(-u0.y.atan2(u0.x)).compose(&to_foot))
}
