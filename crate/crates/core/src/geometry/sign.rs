use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances::INVERSE_TRIG_CLAMP;

/// Sign of the curvature of the plane, `ε` in the bilinear form
/// `x¹y¹ + x²y² + ε·x³y³`.
///
/// The sign selects the trig family used for distances: circular functions
/// in the elliptic plane, hyperbolic functions in the hyperbolic plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurvatureSign {
    Elliptic,
    Hyperbolic,
}

impl CurvatureSign {
    pub const ALL: [CurvatureSign; 2] = [CurvatureSign::Hyperbolic, CurvatureSign::Elliptic];

    pub fn epsilon(self) -> f64 {
        match self {
            CurvatureSign::Elliptic => 1.0,
            CurvatureSign::Hyperbolic => -1.0,
        }
    }

    pub fn epsilon_int(self) -> i32 {
        match self {
            CurvatureSign::Elliptic => 1,
            CurvatureSign::Hyperbolic => -1,
        }
    }

    pub fn from_epsilon(epsilon: i32) -> Result<Self> {
        match epsilon {
            1 => Ok(CurvatureSign::Elliptic),
            -1 => Ok(CurvatureSign::Hyperbolic),
            other => Err(Error::OutOfRange {
                what: "epsilon",
                value: other as f64,
                expected: "+1 (elliptic) or -1 (hyperbolic)",
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurvatureSign::Elliptic => "elliptic",
            CurvatureSign::Hyperbolic => "hyperbolic",
        }
    }

    /// Generalized cosine: `cos` or `cosh`.
    pub fn c(self, t: f64) -> f64 {
        match self {
            CurvatureSign::Elliptic => t.cos(),
            CurvatureSign::Hyperbolic => t.cosh(),
        }
    }

    /// Generalized sine: `sin` or `sinh`.
    pub fn s(self, t: f64) -> f64 {
        match self {
            CurvatureSign::Elliptic => t.sin(),
            CurvatureSign::Hyperbolic => t.sinh(),
        }
    }

    /// Generalized tangent: `tan` or `tanh`. The elliptic tangent has poles at
    /// odd multiples of π/2.
    pub fn t(self, t: f64) -> Result<f64> {
        match self {
            CurvatureSign::Elliptic => {
                let c = t.cos();
                if c.abs() < 1e-15 {
                    Err(Error::Pole {
                        function: "tan",
                        at: t,
                    })
                } else {
                    Ok(t.sin() / c)
                }
            }
            CurvatureSign::Hyperbolic => Ok(t.tanh()),
        }
    }

    /// Inverse of the generalized cosine, returning the nonnegative branch.
    ///
    /// Arguments overshooting the domain by less than [`INVERSE_TRIG_CLAMP`]
    /// are clamped. The elliptic branch is folded into `[0, π/2]`, since
    /// antipodal representatives name the same point.
    pub fn c_inv(self, value: f64) -> Result<f64> {
        match self {
            CurvatureSign::Elliptic => {
                let v = value.abs();
                if v > 1.0 + INVERSE_TRIG_CLAMP {
                    return Err(Error::NumericalDomain {
                        function: "acos",
                        value,
                    });
                }
                Ok(v.min(1.0).acos())
            }
            CurvatureSign::Hyperbolic => {
                if value < 1.0 - INVERSE_TRIG_CLAMP {
                    return Err(Error::NumericalDomain {
                        function: "acosh",
                        value,
                    });
                }
                Ok(value.max(1.0).acosh())
            }
        }
    }

    /// Inverse of the generalized tangent on the nonnegative-distance branch.
    pub fn t_inv(self, value: f64) -> Result<f64> {
        match self {
            CurvatureSign::Elliptic => Ok(value.atan()),
            CurvatureSign::Hyperbolic => {
                if value.abs() >= 1.0 {
                    Err(Error::NumericalDomain {
                        function: "atanh",
                        value,
                    })
                } else {
                    Ok(value.atanh())
                }
            }
        }
    }

    /// Largest admissible distance between foci, or `None` when unbounded.
    pub fn max_focal_distance(self) -> Option<f64> {
        match self {
            CurvatureSign::Elliptic => Some(FRAC_PI_2),
            CurvatureSign::Hyperbolic => None,
        }
    }
}

impl fmt::Display for CurvatureSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurvatureSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "elliptic" | "spherical" | "+1" | "1" => Ok(CurvatureSign::Elliptic),
            "hyperbolic" | "-1" => Ok(CurvatureSign::Hyperbolic),
            _ => Err(Error::OutOfRange {
                what: "geometry",
                value: f64::NAN,
                expected: "hyperbolic or elliptic",
            }),
        }
    }
}

/// Circumference `2π·S(r)` of a metric circle of radius `r`.
pub fn circumference(radius: f64, sign: CurvatureSign) -> Result<f64> {
    check_radius(radius, sign)?;
    Ok(std::f64::consts::TAU * sign.s(radius))
}

pub(crate) fn check_radius(radius: f64, sign: CurvatureSign) -> Result<()> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::OutOfRange {
            what: "radius",
            value: radius,
            expected: "r > 0",
        });
    }
    if sign == CurvatureSign::Elliptic && radius >= FRAC_PI_2 {
        return Err(Error::OutOfRange {
            what: "radius",
            value: radius,
            expected: "r < π/2 in the elliptic plane",
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn trig_at_zero() {
        for sign in CurvatureSign::ALL {
            assert_eq!(sign.c(0.0), 1.0);
            assert_eq!(sign.s(0.0), 0.0);
            assert_eq!(sign.t(0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn sinh_of_one() {
        let s = CurvatureSign::Hyperbolic.s(1.0);
        assert!((s - 1.175_201_193_643_801_4).abs() < 1e-15);
    }

    #[test]
    fn quarter_period() {
        let e = CurvatureSign::Elliptic;
        assert!(e.c(FRAC_PI_2).abs() < 1e-16);
        assert!((e.s(FRAC_PI_2) - 1.0).abs() < 1e-16);
        assert!(matches!(e.t(FRAC_PI_2), Err(Error::Pole { .. })));
        assert!(matches!(e.t(3.0 * FRAC_PI_2), Err(Error::Pole { .. })));
    }

    #[test]
    fn c_inv_clamps_noise_only() {
        let h = CurvatureSign::Hyperbolic;
        assert_eq!(h.c_inv(1.0 - 1e-12).unwrap(), 0.0);
        assert!(matches!(h.c_inv(0.9), Err(Error::NumericalDomain { .. })));
        let e = CurvatureSign::Elliptic;
        assert_eq!(e.c_inv(1.0 + 1e-12).unwrap(), 0.0);
        assert!(matches!(e.c_inv(1.1), Err(Error::NumericalDomain { .. })));
        // folded branch
        assert!((e.c_inv(-0.5).unwrap() - PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn circumference_values() {
        let h = circumference(1.0, CurvatureSign::Hyperbolic).unwrap();
        assert!((h - 7.384_006_872_882_645).abs() < 1e-12);
        let e = circumference(FRAC_PI_2 - 1e-6, CurvatureSign::Elliptic).unwrap();
        assert!((e - TAU).abs() < 1e-10);
        for sign in CurvatureSign::ALL {
            let r = 1e-7;
            let ratio = circumference(r, sign).unwrap() / r;
            assert!((ratio - TAU).abs() < 1e-12);
        }
        assert!(circumference(FRAC_PI_2, CurvatureSign::Elliptic).is_err());
        assert!(circumference(0.0, CurvatureSign::Hyperbolic).is_err());
    }

    #[test]
    fn parse_geometry() {
        assert_eq!(
            "hyperbolic".parse::<CurvatureSign>().unwrap(),
            CurvatureSign::Hyperbolic
        );
        assert_eq!(
            "Elliptic".parse::<CurvatureSign>().unwrap(),
            CurvatureSign::Elliptic
        );
        assert!("euclidean".parse::<CurvatureSign>().is_err());
        assert!(CurvatureSign::from_epsilon(0).is_err());
    }
}
