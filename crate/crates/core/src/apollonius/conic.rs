use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{line_to_axis, CurvatureSign, HomogeneousLine, HomogeneousPoint, Isometry};

/// Whether a [`QuadraticCurve`] is a proper conic or a (doubled) line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Conic,
    Line,
}

/// A curve `xᵀ·q·x = 0` given by a symmetric 3×3 matrix.
///
/// `q` and `λq` describe the same curve. Lines are stored as the rank-one
/// matrix `u·uᵀ` so that isometries act on both kinds the same way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticCurve {
    q: Matrix3<f64>,
    sign: CurvatureSign,
    kind: CurveKind,
}

impl QuadraticCurve {
    pub fn from_matrix(q: Matrix3<f64>, sign: CurvatureSign, kind: CurveKind) -> Self {
        let q = (q + q.transpose()) * 0.5;
        Self { q, sign, kind }
    }

    /// `x² + y² − 2c·x = 0`: the model circle through the origin centred at `(c, 0)`.
    pub fn canonical(c: f64, sign: CurvatureSign) -> Self {
        Self {
            q: Matrix3::new(1.0, 0.0, -c, 0.0, 1.0, 0.0, -c, 0.0, 0.0),
            sign,
            kind: CurveKind::Conic,
        }
    }

    pub fn from_line(u: &HomogeneousLine, sign: CurvatureSign) -> Self {
        let v = u.vector() / u.vector().norm();
        Self {
            q: v * v.transpose(),
            sign,
            kind: CurveKind::Line,
        }
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.q
    }

    pub fn sign(&self) -> CurvatureSign {
        self.sign
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        let q = &self.q;
        [
            [q[(0, 0)], q[(0, 1)], q[(0, 2)]],
            [q[(1, 0)], q[(1, 1)], q[(1, 2)]],
            [q[(2, 0)], q[(2, 1)], q[(2, 2)]],
        ]
    }

    /// The line, when this curve is one.
    pub fn line(&self) -> Option<HomogeneousLine> {
        if self.kind != CurveKind::Line {
            return None;
        }
        let col = (0..3)
            .max_by(|&i, &j| self.q[(i, i)].abs().total_cmp(&self.q[(j, j)].abs()))
            .unwrap();
        HomogeneousLine::from_vector(self.q.column(col).into_owned()).ok()
    }

    pub fn evaluate(&self, p: &HomogeneousPoint) -> f64 {
        let v = p.vector();
        v.dot(&(self.q * v))
    }

    /// `|xᵀqx| / (‖q‖·‖x‖²)`: a residual that does not depend on the scale of
    /// either the matrix or the point representative.
    pub fn residual(&self, p: &HomogeneousPoint) -> f64 {
        let v = p.vector();
        self.evaluate(p).abs() / (self.q.norm() * v.norm_squared())
    }

    /// Gradient of `F(x, y) = (x, y, 1)·q·(x, y, 1)ᵀ` at a chart point.
    pub fn chart_gradient(&self, x: f64, y: f64) -> [f64; 2] {
        let g = self.q * Vector3::new(x, y, 1.0) * 2.0;
        [g.x, g.y]
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            q: self.q * lambda,
            ..*self
        }
    }

    /// The curve in the source frame of `frame`: `frameᵀ·q·frame`.
    ///
    /// If `q` is written in the coordinates `x' = M·x`, the returned matrix is
    /// the same curve in the coordinates `x`.
    pub fn pulled_back(&self, frame: &Isometry) -> Self {
        let m = frame.matrix();
        Self::from_matrix(m.transpose() * self.q * m, self.sign, self.kind)
    }

    /// The image of the curve under `iso`: `M⁻ᵀ·q·M⁻¹`.
    pub fn transformed(&self, iso: &Isometry) -> Self {
        self.pulled_back(&iso.inverse())
    }

    /// A chart point on the curve, preferring the origin.
    ///
    /// Otherwise fans of lines are cast through the origin and through the
    /// chart centre of the conic, when it has one; every line through the
    /// centre of a central conic meets it or misses it symmetrically, so
    /// small curves away from the origin are still found.
    pub(crate) fn base_point(&self) -> Result<Vector3<f64>> {
        let origin = Vector3::new(0.0, 0.0, 1.0);
        if self.residual(&HomogeneousPoint::origin()) <= 1e-14 {
            return Ok(origin);
        }
        let quadratic = self.q.fixed_view::<2, 2>(0, 0).into_owned();
        let centre = quadratic
            .try_inverse()
            .map(|inv| -(inv * self.q.fixed_view::<2, 1>(0, 2)))
            .filter(|c| c.iter().all(|v| v.is_finite()))
            .map(|c| Vector3::new(c.x, c.y, 1.0));
        for p in std::iter::once(origin).chain(centre) {
            for step in 0..24 {
                let phi = std::f64::consts::PI * step as f64 / 24.0;
                if let Some(t) = self.line_root(&p, &Vector3::new(phi.cos(), phi.sin(), 0.0)) {
                    return Ok(p + Vector3::new(phi.cos(), phi.sin(), 0.0) * t);
                }
            }
        }
        Err(Error::EmptyCurve)
    }

    /// A real root `t` of `(p + t·r)ᵀ q (p + t·r) = 0`, if any.
    fn line_root(&self, p: &Vector3<f64>, r: &Vector3<f64>) -> Option<f64> {
        let qa = r.dot(&(self.q * r));
        let qb = p.dot(&(self.q * r));
        let qc = p.dot(&(self.q * p));
        if qa.abs() < 1e-300 {
            return (qb.abs() > 1e-300).then(|| -qc / (2.0 * qb));
        }
        let disc = qb * qb - qa * qc;
        if disc < 0.0 {
            return None;
        }
        // larger-magnitude root first, then the other by Vieta
        let big = -qb - disc.sqrt().copysign(qb);
        let t = if big != 0.0 { qc / big } else { big / qa };
        Some(if t.is_finite() { t } else { big / qa })
    }
}

/// Proper chart points on the curve, in parameter order.
///
/// Conics are parametrized by the pencil of lines through a base point `p₀`
/// on the curve: the direction `r = (cos θ, sin θ, 0)` picks out the second
/// intersection `(rᵀqr)·p₀ − 2(p₀ᵀqr)·r`. For the canonical curve with
/// `p₀ = O` this is `(c(1 + cos 2θ), c·sin 2θ)`, and `θ = π/2` returns the
/// origin itself. Lines are sampled at equal geodesic spacing.
pub fn sample_curve(curve: &QuadraticCurve, n: usize) -> Result<Vec<[f64; 2]>> {
    Ok(sample_curve_points(curve, n)?
        .iter()
        .filter_map(HomogeneousPoint::to_chart)
        .collect())
}

pub fn sample_curve_points(curve: &QuadraticCurve, n: usize) -> Result<Vec<HomogeneousPoint>> {
    conic_samples_in_frame(curve, &Isometry::identity(), n)
}

/// Samples of `curve` carried through `iso`, keeping proper points only.
pub fn conic_samples_in_frame(
    curve: &QuadraticCurve,
    iso: &Isometry,
    n: usize,
) -> Result<Vec<HomogeneousPoint>> {
    let sign = curve.sign;
    Ok(raw_samples(curve, n)?
        .into_iter()
        .filter_map(|v| HomogeneousPoint::from_vector(iso.matrix() * v).ok())
        .filter(|p| p.is_proper(sign))
        .filter_map(|p| p.normalized())
        .collect())
}

fn raw_samples(curve: &QuadraticCurve, n: usize) -> Result<Vec<Vector3<f64>>> {
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "sample count",
            value: n as f64,
            expected: "n >= 3",
        });
    }
    Ok(match curve.kind {
        CurveKind::Conic => {
            let p0 = curve.base_point()?;
            let half = (n / 2) as f64;
            (0..n)
                .map(|j| {
                    let theta = std::f64::consts::FRAC_PI_2
                        + std::f64::consts::PI * (j as f64 - half) / n as f64;
                    let r = Vector3::new(theta.cos(), theta.sin(), 0.0);
                    let qr = curve.q * r;
                    p0 * r.dot(&qr) - r * (2.0 * p0.dot(&qr))
                })
                .collect()
        }
        CurveKind::Line => {
            let u = curve.line().ok_or(Error::EmptyCurve)?;
            let back = line_to_axis(&u, curve.sign)?.inverse();
            canonical_line_samples(curve.sign, n)
                .into_iter()
                .map(|p| back.apply(&p).vector())
                .collect()
        }
    })
}

/// Points of the line `x = 0` at equal geodesic spacing.
pub(crate) fn canonical_line_samples(sign: CurvatureSign, n: usize) -> Vec<HomogeneousPoint> {
    let (lo, hi) = match sign {
        CurvatureSign::Hyperbolic => (-4.0, 4.0),
        CurvatureSign::Elliptic => (-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2),
    };
    (0..n)
        .map(|j| {
            let s = lo + (hi - lo) * (j as f64 + 0.5) / n as f64;
            HomogeneousPoint::new(0.0, sign.s(s), sign.c(s)).expect("nonzero")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::geometry::Homogeneous;

    const H: CurvatureSign = CurvatureSign::Hyperbolic;
    const E: CurvatureSign = CurvatureSign::Elliptic;

    #[test]
    fn canonical_samples_follow_circle_parametrization() {
        let c = 0.3;
        let curve = QuadraticCurve::canonical(c, H);
        let pts = sample_curve(&curve, 16).unwrap();
        assert_eq!(pts.len(), 16);
        for [x, y] in &pts {
            // on the model circle centred (c, 0) with radius |c|
            assert!(((x - c).hypot(*y) - c).abs() < 1e-15);
        }
        // origin is included at j = n/2
        assert!(pts[8][0].abs() < 1e-15 && pts[8][1].abs() < 1e-15);
    }

    #[test]
    fn samples_satisfy_curve_equation() {
        for c in [-0.46, 0.62, 1.37, -40.0] {
            for sign in [H, E] {
                let curve = QuadraticCurve::canonical(c, sign);
                for [x, y] in sample_curve(&curve, 101).unwrap() {
                    let p = HomogeneousPoint::chart(x, y);
                    assert!(curve.residual(&p) < 1e-12);
                    assert!(p.is_proper(sign));
                }
            }
        }
    }

    #[test]
    fn hyperbolic_filtering() {
        let inside = QuadraticCurve::canonical(0.45, H);
        assert_eq!(sample_curve(&inside, 64).unwrap().len(), 64);
        let crossing = QuadraticCurve::canonical(0.62, H);
        let pts = sample_curve(&crossing, 64).unwrap();
        assert!(pts.len() < 64 && !pts.is_empty());
        assert!(pts.iter().all(|[x, y]| x * x + y * y < 1.0));
        // elliptic keeps everything
        assert_eq!(
            sample_curve(&QuadraticCurve::canonical(1.37, E), 64)
                .unwrap()
                .len(),
            64
        );
    }

    #[test]
    fn line_samples_lie_on_line() {
        let u = HomogeneousLine::new(0.4, 0.7, -0.2).unwrap();
        for sign in [H, E] {
            let curve = QuadraticCurve::from_line(&u, sign);
            assert!(curve.line().unwrap().projectively_eq(&u));
            let pts = sample_curve(&curve, 64).unwrap();
            assert_eq!(pts.len(), 64);
            for [x, y] in pts {
                assert!(HomogeneousPoint::chart(x, y).is_on(&u));
            }
        }
    }

    #[test]
    fn pullback_and_pushforward_are_inverse() {
        let curve = QuadraticCurve::canonical(0.3, H);
        let m =
            Isometry::translation_along_x(0.5, H).compose(&Isometry::rotation_about_origin(0.7));
        let there = curve.transformed(&m);
        // points on the original curve map onto the transformed curve
        for [x, y] in sample_curve(&curve, 12).unwrap() {
            let p = m.apply(&HomogeneousPoint::chart(x, y));
            assert!(there.residual(&p) < 1e-14);
        }
        let back = there.pulled_back(&m);
        let ratio = back.matrix()[(0, 0)];
        assert!((back.matrix() / ratio - curve.matrix()).amax() < 1e-12);
    }

    #[test]
    fn generic_base_point() {
        // shift the canonical curve so it no longer passes through the origin
        let curve =
            QuadraticCurve::canonical(0.3, H).transformed(&Isometry::translation_along_x(0.2, H));
        assert!(curve.residual(&HomogeneousPoint::origin()) > 1e-6);
        let pts = sample_curve(&curve, 50).unwrap();
        assert_eq!(pts.len(), 50);
        for [x, y] in pts {
            assert!(curve.residual(&HomogeneousPoint::chart(x, y)) < 1e-13);
        }
    }

    #[test]
    fn too_few_samples() {
        assert!(sample_curve(&QuadraticCurve::canonical(0.1, H), 2).is_err());
    }
}
