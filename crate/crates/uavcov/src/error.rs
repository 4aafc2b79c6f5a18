//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. Variants are grouped roughly
//! by the layer that raises them: geometric preconditions, RF-model domain
//! checks, link-budget arithmetic, solver failures, and scenario I/O.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // -------- geometry --------
    #[error("the two points coincide; the incident angle is undefined")]
    CoincidentPoints,

    #[error("user at ({x}, {y}, {z}) is outside the building box")]
    UserOutsideBuilding { x: f64, y: f64, z: f64 },

    #[error("UAV at ({x}, {y}, {z}) is inside the building; the model only covers outdoor transmitters")]
    UavInsideBuilding { x: f64, y: f64, z: f64 },

    #[error("invalid building: {reason}")]
    InvalidBuilding { reason: String },

    // -------- path-loss model --------
    #[error("distance must be positive, got {0} m")]
    NonPositiveDistance(f64),

    #[error("indoor distance must be non-negative, got {0} m")]
    NegativeIndoorDistance(f64),

    #[error("angle {theta} rad is outside the supported range {expected}")]
    AngleOutOfRange { theta: f64, expected: &'static str },

    // -------- link budget --------
    #[error("bandwidth must be positive, got {0} Hz")]
    NonPositiveBandwidth(f64),

    #[error("rate exponent v*M/B = {exponent} is too large to represent the power demand")]
    ExponentOverflow { exponent: f64 },

    #[error("rate demand v*M/B must be positive to bound the allowable loss")]
    ZeroRateDemand,

    #[error("expected {expected} per-user path losses, got {got}")]
    UserCountMismatch { expected: usize, got: usize },

    // -------- worst-case analysis --------
    #[error(
        "no sign change of the angle cubic on ({lo}, {hi}): f({lo}) = {f_lo}, f({hi}) = {f_hi}"
    )]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error(
        "geometry infeasible: the mid-plane reach (0.5*z_b/tan theta)^2 = {reach_sq} m^2 is \
         smaller than (0.5*y_b)^2 = {half_width_sq} m^2; the optimal angle cannot be realized \
         from the mid-plane"
    )]
    GeometryInfeasible { reach_sq: f64, half_width_sq: f64 },

    #[error("invalid sweep range [{lo}, {hi}]: {reason}")]
    InvalidSweepRange { lo: f64, hi: f64, reason: &'static str },

    // -------- placement --------
    #[error("the user list is empty")]
    EmptyUserList,

    #[error("zero horizontal distance to user {user_index}: the penetration-loss derivative is singular there")]
    GradientSingularity { user_index: usize },

    #[error(
        "user layout is not symmetric across the building mid-planes; gradient descent relies \
         on that symmetry to pin y and z — use the grid-search oracle for asymmetric layouts"
    )]
    AsymmetricLayout,

    #[error("invalid UAV bounds: {reason}")]
    InvalidBounds { reason: String },

    #[error("grid resolution must be positive, got {0} m")]
    InvalidResolution(f64),

    #[error("invalid descent configuration: {reason}")]
    InvalidDescentConfig { reason: String },

    #[error("gradient descent did not converge within its iteration budget at swept value {axis_value}")]
    DescentDidNotConverge { axis_value: f64 },

    // -------- scenario I/O --------
    #[error("users per floor must be even and at least 2 to keep the layout symmetric, got {0}")]
    OddUsersPerFloor(usize),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to parse scenario {path}: {message}")]
    ParseScenario { path: PathBuf, message: String },

    #[error("invalid scenario ({field}): {message}")]
    InvalidScenario { field: String, message: String },

    #[error(
        "this sweep rebuilds the user layout per building, which needs a generated layout \
         (users.generate); the scenario lists explicit user positions"
    )]
    SweepNeedsGeneratedLayout,
}
