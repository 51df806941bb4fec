//! Numerical tolerances shared by constructors, classifiers and oracles.
//!
//! Every threshold used by validation or verification lives here so that
//! tests and the CLI agree on what "equal" means.

/// Allowed deviation of a frame vector's Euclidean length from 1.
pub const EPS_UNIT: f64 = 1e-9;

/// Minimum `|det|` (on length-normalized rows) for a frame to count as
/// linearly independent.
pub const EPS_INDEP: f64 = 1e-12;

/// Relative tolerance for the sampled triangle inequality.
pub const TRIANGLE_REL: f64 = 1e-9;

/// Absolute excess required before a `p < 1` triangle violation counts as a
/// witness.
pub const WITNESS_ABS: f64 = 1e-9;

/// Relative tolerance for identities that only involve a few roundings.
pub const ALGEBRAIC_REL: f64 = 1e-12;

/// Relative tolerance for collinear distance ratios.
pub const RATIO_REL: f64 = 1e-10;

/// Relative tolerance for "point lies on the circle of radius r".
pub const BOUNDARY_REL: f64 = 1e-9;

/// Relative tolerance used when tagging shapes (equal weights, orthogonality).
pub const SHAPE_REL: f64 = 1e-9;

/// Tolerance on the discriminant when intersecting a line with a conic.
pub const DISCRIMINANT_EPS: f64 = 1e-12;
