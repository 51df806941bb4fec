//! Minkowski-type distances built on an arbitrary frame of unit vectors.
//!
//! The distance between `x` and `y` combines the weighted absolute
//! projections `λ_i |⟨v_i, x − y⟩|` with an `ℓp` rule. In the plane its
//! circles are parallelograms (`p = 1` and `p = ∞`) and ellipses (`p = 2`),
//! which ties the family to classical conic geometry: every ellipse is a
//! Euclidean circle of this kind, and every rectangle and rhombus is a
//! taxicab or maximum circle.
//!
//! ```
//! use geomink::{Exponent, MetricSpec, Point, validate_frame};
//!
//! let frame = validate_frame(vec![vec![3.0, -1.0], vec![-1.0, 5.0]], true)?;
//! let m = MetricSpec::unweighted(frame, Exponent::Finite(1.0));
//! let d = m.distance(&Point::new(vec![0.0, 0.0])?, &Point::new(vec![1.0, 0.0])?)?;
//! assert!((d - 1.1447994331886978).abs() < 1e-15);
//! # Ok::<(), geomink::GeomError>(())
//! ```
//!
//! Modules:
//!
//! * [`metric`]: points, frames, the distance family and its variants.
//! * [`planar`]: circles in the plane, their vertices, conic equations and
//!   sampled boundaries.
//! * [`conic`]: conversions between circles, ellipses, rectangles, rhombi
//!   and the eccentrix description of an ellipse.
//! * [`verify`]: seeded Monte-Carlo oracles for every property above.

pub mod conic;
pub mod error;
pub mod linalg;
pub mod metric;
pub mod planar;
pub mod sampling;
pub mod tol;
pub mod vec2;
pub mod verify;

pub use conic::{
    ball_from_ellipse, conjugate_diameter_chords, eccentric_radius, eccentricity,
    eccentricity_from_angle, eccentrix_form_from_ellipse, ellipse_from_ball,
    ellipse_from_ball_strict, ellipse_from_eccentrix_form, ellipse_from_weighted_ball, hyperbola_from_line_pair,
    maximum_ball_from_rhombus, scaffold, taxicab_ball_from_rectangle, AsymptoteSlopes, Chord,
    EccentrixForm, EllipseParams, Hyperbola, LinePair, RectangleSpec, RhombusSpec, Scaffold,
};
pub use error::{GeomError, Result};
pub use metric::{
    translate, validate_frame, Exponent, Frame, HyperplaneSpec, MetricSpec, Point, VariantMode,
    VariantSpec,
};
pub use planar::{
    ball_boundary_points, classify_ball_shape, common_points, euclidean_circle_conic,
    maximum_circle, taxicab_circle, BallKind, BallSpec, ConicClass, ConicCoeffs, Frame2,
    Parallelogram4, Polyline, ShapeKind, ShapeReport,
};
pub use vec2::Vec2;
pub use verify::{
    check_ball_membership, check_ball_membership_with_tolerance, check_center_symmetry,
    check_invariance, check_metric_axioms, check_p_limit, find_triangle_violation,
    search_triangle_violation, Boundary,
    PropertyReport, SampleConfig,
};
