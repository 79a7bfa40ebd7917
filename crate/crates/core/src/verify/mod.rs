//! Independent oracles: the distance-ratio locus traced by root finding,
//! the flat-plane baseline, the small-scale limit that links them, and the
//! named checks built on top.

mod arc;
mod checks;
mod euclid;
mod limit;
pub mod random;

pub use arc::{arc_ratio_residual, trace_arc_apollonius, RayTraceResult};
pub use checks::{
    ArcTrace, Check, CheckConfig, CheckRegistry, CheckReport, Classification, CoefficientIdentity,
    EquiopticAngles, EuclideanOracle, LineCase, ParabolicPencil, RatioProperty, SmallScale,
    SuiteReport, ViewingAngleOracle,
};
pub use euclid::{euclid_apollonius, euclid_viewing_angle, EuclidLocus, EuclideanCircle};
pub use limit::{small_scale_limit, small_scale_rows, write_sweep_csv, SweepRow, DEFAULT_SCALES};
