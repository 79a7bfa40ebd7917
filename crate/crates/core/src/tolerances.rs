//! Numeric thresholds shared across the crate.
//!
//! Everything is `f64`; the tightest acceptance tolerance is 1e-12, so no
//! extended precision is needed anywhere.

/// Inverse-trig arguments that overshoot their domain by less than this are
/// clamped to the boundary. Larger overshoots are reported as errors.
pub const INVERSE_TRIG_CLAMP: f64 = 1e-9;

/// Minimum value of `ε⟨x,x⟩` (chart-normalized) for a point to count as proper.
pub const PROPERNESS: f64 = 1e-12;

/// Below this `|x³| / |x|`, a point is treated as lying on the ideal line.
pub const IDEAL_LINE: f64 = 1e-12;

/// `|k - 1|` below which the Apollonius curve is reported as the bisector line.
pub const LINE_CASE: f64 = 1e-9;

/// Agreement required between the foci form and the distance form of the
/// x-coefficient, measured relative to `max(1, |c|)`.
pub const COEFFICIENT_AGREEMENT: f64 = 1e-12;

/// Residual of the coefficient identities checked on canonical foci.
pub const COEFFICIENT_IDENTITY: f64 = 1e-12;

/// `||c| - 1/2|` below which a hyperbolic curve is tangent to the absolute.
pub const PARACYCLE: f64 = 1e-12;

/// Margin kept between sampled hyperbolic points and the absolute.
pub const SAMPLE_MARGIN: f64 = 1e-12;

/// Projective equality of coordinate triples (normalized cross product).
pub const PROJECTIVE_EQUALITY: f64 = 1e-12;
