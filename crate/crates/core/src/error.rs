use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {coords:?} is not a proper point of the {geometry} plane")]
    ImproperPoint {
        coords: [f64; 3],
        geometry: &'static str,
    },

    #[error("line {coords:?} is not a proper line of the {geometry} plane")]
    ImproperLine {
        coords: [f64; 3],
        geometry: &'static str,
    },

    #[error("homogeneous coordinates must not all be zero")]
    ZeroVector,

    #[error("inverse {function} argument {value} lies outside its domain")]
    NumericalDomain { function: &'static str, value: f64 },

    #[error("{function} has a pole at {at}")]
    Pole { function: &'static str, at: f64 },

    #[error("{what} = {value} is out of range ({expected})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("points coincide")]
    CoincidentPoints,

    #[error(
        "point is inside the circle (distance {distance} < radius {radius}); no tangents exist"
    )]
    InsideCircle { distance: f64, radius: f64 },

    #[error("circles are concentric; the equioptic locus is degenerate")]
    Concentric,

    #[error("x-coefficient mismatch between foci form ({from_foci}) and distance form ({from_distance})")]
    CoefficientMismatch { from_foci: f64, from_distance: f64 },

    #[error(
        "classification mismatch: reduction gives {reduction} intersections, solver gives {solver}"
    )]
    ClassificationMismatch { reduction: u8, solver: u8 },

    #[error("tangent construction failed: {0}")]
    TangentConstruction(String),

    #[error("no point found on the curve")]
    EmptyCurve,

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("a check named `{0}` is already registered")]
    DuplicateCheck(String),
}
