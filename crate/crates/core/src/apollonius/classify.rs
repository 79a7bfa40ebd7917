use std::f64::consts::TAU;
use std::fmt;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::conic::{CurveKind, QuadraticCurve};
use crate::error::{Error, Result};
use crate::geometry::CurvatureSign;
use crate::tolerances::PARACYCLE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConicTag {
    Ellipse,
    Paracycle,
    SemiHyperbola,
    Line,
}

impl fmt::Display for ConicTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConicTag::Ellipse => "Ellipse",
            ConicTag::Paracycle => "Paracycle",
            ConicTag::SemiHyperbola => "SemiHyperbola",
            ConicTag::Line => "Line",
        };
        f.write_str(s)
    }
}

/// Type of an Apollonius curve together with the number of real points it
/// shares with the absolute (hyperbolic) or the ideal line (elliptic).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicClass {
    pub tag: ConicTag,
    pub absolute_intersections: u8,
}

impl ConicClass {
    fn hyperbolic(count: u8) -> Self {
        let tag = match count {
            0 => ConicTag::Ellipse,
            1 => ConicTag::Paracycle,
            _ => ConicTag::SemiHyperbola,
        };
        Self {
            tag,
            absolute_intersections: count,
        }
    }
}

/// Classifies an Apollonius curve.
///
/// Hyperbolic conics are counted against the absolute `x² + y² = 1` by a
/// direct intersection solver. When the curve is in canonical form the
/// `|c|` vs `1/2` reduction is evaluated as well and the two must agree.
/// Elliptic conics are always ellipses; the count reported is the number of
/// real points on the ideal line `x³ = 0`.
pub fn classify(curve: &QuadraticCurve) -> Result<ConicClass> {
    let q = curve.matrix();
    match (curve.kind(), curve.sign()) {
        (CurveKind::Line, sign) => {
            let u = curve.line().ok_or(Error::EmptyCurve)?;
            let count = match sign {
                CurvatureSign::Hyperbolic => {
                    let v = u.vector();
                    let s = (v.x * v.x + v.y * v.y - v.z * v.z) / v.norm_squared();
                    count_by_sign(s)
                }
                CurvatureSign::Elliptic => 1,
            };
            Ok(ConicClass {
                tag: ConicTag::Line,
                absolute_intersections: count,
            })
        }
        (CurveKind::Conic, CurvatureSign::Elliptic) => Ok(ConicClass {
            tag: ConicTag::Ellipse,
            absolute_intersections: ideal_line_intersections(q),
        }),
        (CurveKind::Conic, CurvatureSign::Hyperbolic) => {
            let solver = absolute_intersections(q);
            if let Some(c) = canonical_coefficient(q) {
                let reduction = reduction_count(c);
                if reduction != solver {
                    return Err(Error::ClassificationMismatch { reduction, solver });
                }
            }
            Ok(ConicClass::hyperbolic(solver))
        }
    }
}

fn count_by_sign(s: f64) -> u8 {
    if s.abs() <= PARACYCLE {
        1
    } else if s > 0.0 {
        2
    } else {
        0
    }
}

/// `|c| > 1/2` ⇒ 2, `|c| = 1/2` ⇒ 1, `|c| < 1/2` ⇒ 0, for `x² + y² − 2cx = 0`.
///
/// On the absolute the curve reads `1 − 2c·cos φ = 0`, which has two, one
/// (double) or no solutions in `φ` exactly in these three cases.
pub fn reduction_count(c: f64) -> u8 {
    count_by_sign(c.abs() - 0.5)
}

/// `c` for a matrix proportional to `[[1,0,−c],[0,1,0],[−c,0,0]]`.
pub fn canonical_coefficient(q: &Matrix3<f64>) -> Option<f64> {
    let s = q[(0, 0)];
    if s == 0.0 {
        return None;
    }
    let n = q / s;
    let tol = 1e-12 * n.amax().max(1.0);
    let shaped = n[(0, 1)].abs() <= tol
        && n[(1, 2)].abs() <= tol
        && n[(2, 2)].abs() <= tol
        && (n[(1, 1)] - 1.0).abs() <= tol;
    shaped.then(|| -n[(0, 2)])
}

/// Real points of the conic on the ideal line, from the discriminant of its
/// quadratic part.
pub fn ideal_line_intersections(q: &Matrix3<f64>) -> u8 {
    let scale = (q[(0, 0)].abs() + q[(1, 1)].abs()).max(q.amax());
    let disc = (q[(0, 1)] * q[(0, 1)] - q[(0, 0)] * q[(1, 1)]) / (scale * scale);
    count_by_sign(disc)
}

/// Number of distinct real points the conic shares with the absolute,
/// found by scanning `g(φ) = p(φ)ᵀ·q·p(φ)` with `p(φ) = (cos φ, sin φ, 1)`.
///
/// Simple roots are sign changes. Near-zero extrema (within the paracycle
/// tolerance, with `q` scaled so its quadratic part has unit mean diagonal)
/// count as one tangency each; sign changes split off such an extremum by
/// rounding are absorbed into it.
pub fn absolute_intersections(q: &Matrix3<f64>) -> u8 {
    const GRID: usize = 4096;
    let diag = (q[(0, 0)].abs() + q[(1, 1)].abs()) / 2.0;
    let scale = if diag > 1e-9 * q.amax() {
        diag
    } else {
        q.amax()
    };
    let q = q / scale;
    let g = |phi: f64| {
        let p = Vector3::new(phi.cos(), phi.sin(), 1.0);
        p.dot(&(q * p))
    };

    let step = TAU / GRID as f64;
    let grid: Vec<(f64, f64)> = (0..GRID)
        .map(|i| {
            let phi = i as f64 * step;
            (phi, g(phi))
        })
        .collect();

    // (φ, g, is_tangency)
    let mut seq: Vec<(f64, f64, bool)> = Vec::with_capacity(GRID + 8);
    for i in 0..GRID {
        let (phi, val) = grid[i];
        let prev = grid[(i + GRID - 1) % GRID].1;
        let next = grid[(i + 1) % GRID].1;
        seq.push((phi, val, false));
        if (prev - val) * (next - val) > 0.0 || (val == 0.0 && prev * next > 0.0) {
            let minimize = val < next;
            let (phi_ext, g_ext) = golden_extremum(&g, phi - step, phi + step, minimize);
            let phi_ext = phi_ext.rem_euclid(TAU);
            seq.push((phi_ext, g_ext, g_ext.abs() <= 2.0 * PARACYCLE));
        }
    }
    seq.sort_by(|a, b| a.0.total_cmp(&b.0));
    // one tangency per touching point
    let mut last_tangent: Option<f64> = None;
    for e in seq.iter_mut().filter(|e| e.2) {
        if last_tangent.is_some_and(|t| e.0 - t < step) {
            e.2 = false;
            e.1 = 0.0;
        } else {
            last_tangent = Some(e.0);
        }
    }

    let tangencies = seq.iter().filter(|e| e.2).count();
    let live: Vec<(f64, bool)> = seq.iter().map(|e| (e.1, e.2)).collect();
    let n = live.len();
    let mut crossings = 0;
    for i in 0..n {
        let (a, ta) = live[i];
        if ta || a == 0.0 {
            continue;
        }
        // walk forward to the next nonzero, non-tangency value
        let mut j = (i + 1) % n;
        let mut touched = false;
        while live[j].1 || live[j].0 == 0.0 {
            touched |= live[j].1;
            j = (j + 1) % n;
            if j == i {
                break;
            }
        }
        let b = live[j].0;
        if !touched && a * b < 0.0 {
            crossings += 1;
        }
    }
    (crossings + tangencies) as u8
}

fn golden_extremum<F: Fn(f64) -> f64>(
    f: &F,
    mut lo: f64,
    mut hi: f64,
    minimize: bool,
) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let h = |x: f64| if minimize { f(x) } else { -f(x) };
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (h(x1), h(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = h(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = h(x2);
        }
    }
    let x = (lo + hi) / 2.0;
    (x, f(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{HomogeneousLine, Isometry};

    const H: CurvatureSign = CurvatureSign::Hyperbolic;

    #[test]
    fn reduction_boundaries() {
        assert_eq!(reduction_count(0.3), 0);
        assert_eq!(reduction_count(-0.5), 1);
        assert_eq!(reduction_count(0.5 + 5e-13), 1);
        assert_eq!(reduction_count(0.5 + 1e-9), 2);
        assert_eq!(reduction_count(-0.7), 2);
    }

    #[test]
    fn solver_matches_reduction_on_canonical_curves() {
        for c in [
            -3.0, -0.7, -0.5, -0.4999, -0.1, 0.0001, 0.2, 0.5, 0.5000001, 0.63, 12.0,
        ] {
            let q = *QuadraticCurve::canonical(c, H).matrix();
            assert_eq!(absolute_intersections(&q), reduction_count(c), "c = {c}");
        }
    }

    #[test]
    fn classification_is_scale_invariant() {
        for c in [-0.46, 0.5, 0.63] {
            let curve = QuadraticCurve::canonical(c, H);
            let base = classify(&curve).unwrap();
            for lambda in [1e-6, -2.0, 3e5] {
                assert_eq!(classify(&curve.scaled(lambda)).unwrap(), base);
            }
        }
    }

    #[test]
    fn classification_survives_isometries() {
        let m =
            Isometry::translation_along_x(0.6, H).compose(&Isometry::rotation_about_origin(1.1));
        for (c, tag) in [(0.3, ConicTag::Ellipse), (0.9, ConicTag::SemiHyperbola)] {
            let moved = QuadraticCurve::canonical(c, H).transformed(&m);
            assert!(canonical_coefficient(moved.matrix()).is_none());
            assert_eq!(classify(&moved).unwrap().tag, tag);
        }
    }

    #[test]
    fn elliptic_always_ellipse() {
        let curve = QuadraticCurve::canonical(1.37, CurvatureSign::Elliptic);
        assert_eq!(
            classify(&curve).unwrap(),
            ConicClass {
                tag: ConicTag::Ellipse,
                absolute_intersections: 0
            }
        );
    }

    #[test]
    fn lines() {
        let axis = HomogeneousLine::new(1.0, 0.0, 0.0).unwrap();
        let c = classify(&QuadraticCurve::from_line(&axis, H)).unwrap();
        assert_eq!(c.tag, ConicTag::Line);
        assert_eq!(c.absolute_intersections, 2);
    }
}
