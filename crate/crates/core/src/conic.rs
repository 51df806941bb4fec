//! Conversions between planar metric circles and classical conic data.
//!
//! With unit weights the Euclidean circle of radius `r` for a frame at
//! non-obtuse angle `θ` is the ellipse with
//!
//! ```text
//! a = r / √(1 − cos θ),   b = r / √(1 + cos θ),   r² = 2a²b² / (a² + b²)
//! ```
//!
//! whose major axis bisects the non-obtuse angle between `l1` and `l2`.
//! Equivalently, the ellipse is the locus of points whose squared distances
//! to two fixed intersecting lines (its *eccentrices*) sum to the constant
//! `c = r²`. The eccentrices are the diagonals of the axis-aligned bounding
//! rectangle, and the chords they cut from the ellipse are conjugate
//! diameters of half-length `R = √((a² + b²)/2)`.
//!
//! Rectangles and rhombi convert to taxicab and maximum circles the same
//! way (unit weights, frame vectors perpendicular to the diagonals or to
//! the sides respectively).

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use crate::error::{GeomError, Result};
use crate::planar::{BallKind, BallSpec, ConicCoeffs, Frame2};
use crate::tol::{EPS_INDEP, SHAPE_REL};
use crate::vec2::{axis_angle, Vec2};

/// An ellipse with `a ≥ b > 0`; `angle ∈ [0, π)` is the major-axis direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseParams {
    center: Vec2,
    a: f64,
    b: f64,
    angle: f64,
}

impl EllipseParams {
    /// If `a < b` the semi-axes are swapped and the angle turned by `π/2`.
    pub fn new(center: Vec2, a: f64, b: f64, angle: f64) -> Result<Self> {
        if !(center.is_finite() && a.is_finite() && b.is_finite() && angle.is_finite()) {
            return Err(GeomError::NonFinite("ellipse parameters"));
        }
        for (name, value) in [("semi-axis a", a), ("semi-axis b", b)] {
            if value <= 0.0 {
                return Err(GeomError::NonPositive { name, value });
            }
        }
        let (a, b, angle) = if a >= b {
            (a, b, angle)
        } else {
            (b, a, angle + FRAC_PI_2)
        };
        Ok(Self {
            center,
            a,
            b,
            angle: axis_angle(angle),
        })
    }

    pub fn center(&self) -> Vec2 {
        self.center
    }

    /// Semi-major axis.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Semi-minor axis.
    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn is_circle(&self) -> bool {
        self.a - self.b <= SHAPE_REL * self.a
    }

    /// Unit vector along the major axis.
    pub fn major_axis(&self) -> Vec2 {
        Vec2::from_angle(self.angle)
    }

    /// Map a point from the ellipse's own axis frame to the plane.
    pub fn to_world(&self, local: Vec2) -> Vec2 {
        self.center + local.rotate(self.angle)
    }

    /// Map a point from the plane into the ellipse's axis frame.
    pub fn to_local(&self, world: Vec2) -> Vec2 {
        (world - self.center).rotate(-self.angle)
    }

    /// Parametric point `(a cos t, b sin t)` in the ellipse frame.
    pub fn point_at(&self, t: f64) -> Vec2 {
        let (s, c) = t.sin_cos();
        self.to_world(Vec2::new(self.a * c, self.b * s))
    }

    /// The implicit equation, normalized so that `F = −1` at the origin
    /// frame before translation.
    pub fn to_conic(&self) -> ConicCoeffs {
        let (s, c) = self.angle.sin_cos();
        let (ia, ib) = (1.0 / (self.a * self.a), 1.0 / (self.b * self.b));
        ConicCoeffs {
            a: c * c * ia + s * s * ib,
            b: s * s * ia + c * c * ib,
            c: s * c * (ia - ib),
            d: 0.0,
            e: 0.0,
            f: -1.0,
        }
        .translated(self.center)
    }

    /// Recover center, semi-axes and orientation of a real ellipse from its
    /// implicit equation. Returns `None` for any other conic.
    pub fn from_conic(q: &ConicCoeffs) -> Option<Self> {
        let delta = q.delta();
        if !(delta > 0.0) {
            return None;
        }
        // center solves [[A, C], [C, B]] (h, k) = −(D, E)
        let h = (-q.d * q.b + q.e * q.c) / delta;
        let k = (-q.e * q.a + q.d * q.c) / delta;
        let f0 = q.f + q.d * h + q.e * k;
        let mean = 0.5 * (q.a + q.b);
        let spread = (0.5 * (q.a - q.b)).hypot(q.c);
        let (small, large) = (mean - spread, mean + spread);
        if !(small > 0.0) || !(f0 < 0.0) {
            if small < 0.0 && large < 0.0 && f0 > 0.0 {
                let flipped = ConicCoeffs {
                    a: -q.a,
                    b: -q.b,
                    c: -q.c,
                    d: -q.d,
                    e: -q.e,
                    f: -q.f,
                };
                return Self::from_conic(&flipped);
            }
            return None;
        }
        // eigenvector of the larger eigenvalue is at ½·atan2(2C, A − B);
        // the major axis is perpendicular to it.
        let minor_dir = 0.5 * (2.0 * q.c).atan2(q.a - q.b);
        Self::new(
            Vec2::new(h, k),
            (-f0 / small).sqrt(),
            (-f0 / large).sqrt(),
            minor_dir + FRAC_PI_2,
        )
        .ok()
    }

    /// Directions of the two diagonals of the axis-aligned bounding
    /// rectangle: `(a, b)` and `(a, −b)` in the ellipse frame.
    pub fn eccentrix_directions(&self) -> [Vec2; 2] {
        let n = self.a.hypot(self.b);
        [
            Vec2::new(self.a / n, self.b / n).rotate(self.angle),
            Vec2::new(self.a / n, -self.b / n).rotate(self.angle),
        ]
    }
}

/// Two lines through a common point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinePair {
    point: Vec2,
    dir1: Vec2,
    dir2: Vec2,
    theta: f64,
}

impl LinePair {
    /// Directions need not be unit length but must be independent.
    pub fn new(point: Vec2, dir1: Vec2, dir2: Vec2) -> Result<Self> {
        if !(point.is_finite() && dir1.is_finite() && dir2.is_finite()) {
            return Err(GeomError::NonFinite("line pair"));
        }
        let dir1 = dir1.normalized().ok_or(GeomError::ZeroVector { row: 0 })?;
        let dir2 = dir2.normalized().ok_or(GeomError::ZeroVector { row: 1 })?;
        let cross = dir1.cross(dir2);
        if cross.abs() <= EPS_INDEP {
            return Err(GeomError::DependentFrame { det: cross });
        }
        Ok(Self {
            point,
            dir1,
            dir2,
            theta: cross.abs().atan2(dir1.dot(dir2).abs()),
        })
    }

    /// Lines through `point` perpendicular to the frame vectors.
    pub fn from_normals(point: Vec2, frame: &Frame2) -> Self {
        Self::new(point, frame.l1_direction(), frame.l2_direction())
            .expect("frame vectors are independent")
    }

    pub fn point(&self) -> Vec2 {
        self.point
    }

    pub fn dir1(&self) -> Vec2 {
        self.dir1
    }

    pub fn dir2(&self) -> Vec2 {
        self.dir2
    }

    /// Non-obtuse angle between the lines, in `(0, π/2]`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Unit normals `(v1, v2)` of the two lines.
    pub fn normals(&self) -> (Vec2, Vec2) {
        (-self.dir1.perp(), -self.dir2.perp())
    }

    pub fn frame(&self) -> Frame2 {
        let (n1, n2) = self.normals();
        Frame2::new(n1, n2).expect("unit, independent normals")
    }

    /// Unit direction bisecting the non-obtuse angle between the lines.
    /// Perpendicular lines use the bisector of `dir1` and `−dir2`.
    pub fn acute_bisector(&self) -> Vec2 {
        let s = if self.dir1.dot(self.dir2) > 0.0 { 1.0 } else { -1.0 };
        (self.dir1 + self.dir2 * s)
            .normalized()
            .expect("independent directions never cancel")
    }

    pub fn distances(&self, p: Vec2) -> (f64, f64) {
        let (n1, n2) = self.normals();
        let d = p - self.point;
        (n1.dot(d).abs(), n2.dot(d).abs())
    }

    /// Does `other` describe the same two lines (in either order)?
    pub fn same_lines(&self, other: &LinePair, tol: f64) -> bool {
        let parallel = |a: Vec2, b: Vec2| a.cross(b).abs() <= tol;
        let through = (other.point - self.point).cross(self.dir1).abs() <= tol * (1.0 + (other.point - self.point).norm())
            && (other.point - self.point).cross(self.dir2).abs() <= tol * (1.0 + (other.point - self.point).norm());
        through
            && ((parallel(self.dir1, other.dir1) && parallel(self.dir2, other.dir2))
                || (parallel(self.dir1, other.dir2) && parallel(self.dir2, other.dir1)))
    }
}

/// An ellipse described by its eccentrices and the constant sum of squared
/// distances to them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EccentrixForm {
    lines: LinePair,
    constant: f64,
}

impl EccentrixForm {
    pub fn new(lines: LinePair, constant: f64) -> Result<Self> {
        if !(constant.is_finite() && constant > 0.0) {
            return Err(GeomError::NonPositive {
                name: "eccentrix constant",
                value: constant,
            });
        }
        Ok(Self { lines, constant })
    }

    pub fn lines(&self) -> &LinePair {
        &self.lines
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// `d(P, l1)² + d(P, l2)² − c`.
    pub fn residual(&self, p: Vec2) -> f64 {
        let (d1, d2) = self.lines.distances(p);
        d1 * d1 + d2 * d2 - self.constant
    }
}

/// Rectangle with sides `2a` (along `angle`) and `2b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangleSpec {
    pub center: Vec2,
    pub half_sides: (f64, f64),
    pub angle: f64,
}

impl RectangleSpec {
    pub fn new(center: Vec2, a: f64, b: f64, angle: f64) -> Result<Self> {
        positive_pair("half side", a, b)?;
        Ok(Self {
            center,
            half_sides: (a, b),
            angle,
        })
    }

    /// Corners counterclockwise from `(a, b)` in the rectangle frame.
    pub fn corners(&self) -> [Vec2; 4] {
        let (a, b) = self.half_sides;
        [(a, b), (-a, b), (-a, -b), (a, -b)]
            .map(|(x, y)| self.center + Vec2::new(x, y).rotate(self.angle))
    }
}

/// Rhombus with diagonals `2e` (along `angle`) and `2f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhombusSpec {
    pub center: Vec2,
    pub half_diagonals: (f64, f64),
    pub angle: f64,
}

impl RhombusSpec {
    pub fn new(center: Vec2, e: f64, f: f64, angle: f64) -> Result<Self> {
        positive_pair("half diagonal", e, f)?;
        Ok(Self {
            center,
            half_diagonals: (e, f),
            angle,
        })
    }

    /// Vertices counterclockwise from `(e, 0)` in the rhombus frame.
    pub fn vertices(&self) -> [Vec2; 4] {
        let (e, f) = self.half_diagonals;
        [(e, 0.0), (0.0, f), (-e, 0.0), (0.0, -f)]
            .map(|(x, y)| self.center + Vec2::new(x, y).rotate(self.angle))
    }
}

fn positive_pair(name: &'static str, x: f64, y: f64) -> Result<()> {
    for value in [x, y] {
        if !value.is_finite() {
            return Err(GeomError::NonFinite(name));
        }
        if value <= 0.0 {
            return Err(GeomError::NonPositive { name, value });
        }
    }
    Ok(())
}

/// Frame whose vectors are the unit normals of the lines through the origin
/// with local directions `(p, q)` and `(p, −q)`, turned by `angle`.
fn diagonal_normals(p: f64, q: f64, angle: f64) -> Frame2 {
    let n = p.hypot(q);
    let v1 = Vec2::new(q / n, -p / n).rotate(angle);
    let v2 = Vec2::new(q / n, p / n).rotate(angle);
    Frame2::new(v1, v2).expect("diagonal normals are unit and independent")
}

/// Ellipse of the unit-weight Euclidean circle `(frame, center, r)`.
///
/// A perpendicular frame yields a circle (`a = b = r`); use
/// [`ellipse_from_ball_strict`] to reject that case.
pub fn ellipse_from_ball(frame: &Frame2, center: Vec2, r: f64) -> Result<EllipseParams> {
    if !(r.is_finite() && r > 0.0) {
        return Err(GeomError::NonPositive {
            name: "radius",
            value: r,
        });
    }
    let cos = frame.cos_theta();
    let a = r / (1.0 - cos).sqrt();
    let b = r / (1.0 + cos).sqrt();
    let bisector = LinePair::from_normals(center, frame).acute_bisector();
    EllipseParams::new(center, a, b, bisector.angle())
}

/// Like [`ellipse_from_ball`] but fails with `DegenerateFrame` when the
/// frame is orthogonal and the result would be a circle.
pub fn ellipse_from_ball_strict(frame: &Frame2, center: Vec2, r: f64) -> Result<EllipseParams> {
    if frame.is_orthogonal() {
        return Err(GeomError::DegenerateFrame(
            "orthogonal frame gives a circle, not a strict ellipse",
        ));
    }
    ellipse_from_ball(frame, center, r)
}

/// Ellipse of a Euclidean circle with arbitrary weights.
///
/// With `M` the matrix of rows `λ_i v_i` the circle is `{x : ‖M(x − C)‖ = r}`,
/// so the semi-axes are `r / σ_min` and `r / σ_max` for the singular values
/// of `M`. Using `σ_min σ_max = λ1 λ2 |τ|` avoids the cancellation that the
/// eigenvalues of the conic matrix suffer for very flat ellipses.
pub fn ellipse_from_weighted_ball(spec: &BallSpec) -> Result<EllipseParams> {
    if spec.kind() != BallKind::Euclidean {
        return Err(GeomError::UnsupportedExponent(format!("{:?} (expected Euclidean)", spec.kind())));
    }
    let f = spec.frame();
    let (v1, v2) = (f.v1(), f.v2());
    let [l1, l2] = spec.weights();
    let (w1, w2) = (l1 * l1, l2 * l2);
    let fro2 = w1 * v1.dot(v1) + w2 * v2.dot(v2);
    let det = (l1 * l2 * f.tau()).abs();
    let disc = ((fro2 - 2.0 * det).max(0.0) * (fro2 + 2.0 * det)).sqrt();
    let s_max = (0.5 * (fro2 + disc)).sqrt();
    let s_min = det / s_max;
    // MᵀM = [[A, C], [C, B]]; its top eigenvector is the minor axis
    let a = w1 * v1.x * v1.x + w2 * v2.x * v2.x;
    let b = w1 * v1.y * v1.y + w2 * v2.y * v2.y;
    let c = w1 * v1.x * v1.y + w2 * v2.x * v2.y;
    let minor = 0.5 * (2.0 * c).atan2(a - b);
    let r = spec.radius();
    EllipseParams::new(spec.center(), r / s_min, r / s_max, minor + FRAC_PI_2)
}

/// Unit-weight Euclidean circle `(frame, radius)` equal to the ellipse. The
/// frame vectors are normals of the bounding-rectangle diagonals. For a
/// circle the pair at ±45° to the stored angle is returned.
pub fn ball_from_ellipse(e: &EllipseParams) -> (Frame2, f64) {
    let (a, b) = (e.a(), e.b());
    let frame = diagonal_normals(a, b, e.angle());
    (frame, SQRT_2 * a * b / a.hypot(b))
}

/// Unit-weight taxicab circle equal to the rectangle.
pub fn taxicab_ball_from_rectangle(rect: &RectangleSpec) -> (Frame2, f64) {
    let (a, b) = rect.half_sides;
    (diagonal_normals(a, b, rect.angle), 2.0 * a * b / a.hypot(b))
}

/// Unit-weight maximum circle equal to the rhombus. The frame vectors are
/// perpendicular to the sides.
pub fn maximum_ball_from_rhombus(rh: &RhombusSpec) -> (Frame2, f64) {
    let (e, f) = rh.half_diagonals;
    // sides run along (e, −f) and (e, f) in the rhombus frame
    (diagonal_normals(e, f, rh.angle), e * f / e.hypot(f))
}

/// `√(1 − b²/a²)`.
pub fn eccentricity(e: &EllipseParams) -> f64 {
    let ratio = e.b() / e.a();
    (1.0 - ratio * ratio).max(0.0).sqrt()
}

/// Eccentricity from the non-obtuse angle between the eccentrices:
/// `√(1 − tan²(θ/2))`.
pub fn eccentricity_from_angle(theta: f64) -> f64 {
    let t = (0.5 * theta).tan();
    (1.0 - t * t).max(0.0).sqrt()
}

/// Half-length of the chord an eccentrix cuts: `√(a² + b²) / √2`.
pub fn eccentric_radius(e: &EllipseParams) -> f64 {
    e.a().hypot(e.b()) / SQRT_2
}

/// A chord given by its two endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chord {
    pub start: Vec2,
    pub end: Vec2,
}

impl Chord {
    pub fn midpoint(&self) -> Vec2 {
        (self.start + self.end) * 0.5
    }

    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }
}

/// The two chords cut by the eccentrices. They are conjugate diameters.
pub fn conjugate_diameter_chords(e: &EllipseParams) -> Result<[Chord; 2]> {
    // intersect about the origin; a translated equation loses digits when
    // the center is far away compared with the axes
    let centered = EllipseParams { center: Vec2::ZERO, ..*e };
    let conic = centered.to_conic();
    let c = e.center();
    let mut chords = [Chord {
        start: c,
        end: c,
    }; 2];
    for (chord, dir) in chords.iter_mut().zip(e.eccentrix_directions()) {
        let [t0, t1] = conic
            .intersect_line(Vec2::ZERO, dir)
            .ok_or(GeomError::DegenerateFrame("eccentrix misses the ellipse"))?;
        *chord = Chord {
            start: c + dir * t0,
            end: c + dir * t1,
        };
    }
    Ok(chords)
}

/// Tangent rectangle, tangent rhombus and the similar ellipse through all
/// eight of their vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaffold {
    /// Sides `2a × 2b` along the axes, counterclockwise from `(a, b)`.
    pub rectangle: [Vec2; 4],
    /// Diagonals `2√2 a` and `2√2 b` along the axes, counterclockwise from
    /// `(√2 a, 0)`.
    pub rhombus: [Vec2; 4],
    /// Semi-axes `√2 a` and `√2 b`.
    pub similar_ellipse: EllipseParams,
}

pub fn scaffold(e: &EllipseParams) -> Scaffold {
    let (a, b) = (e.a(), e.b());
    let rectangle = [(a, b), (-a, b), (-a, -b), (a, -b)].map(|(x, y)| e.to_world(Vec2::new(x, y)));
    let (ra, rb) = (SQRT_2 * a, SQRT_2 * b);
    let rhombus =
        [(ra, 0.0), (0.0, rb), (-ra, 0.0), (0.0, -rb)].map(|(x, y)| e.to_world(Vec2::new(x, y)));
    let similar_ellipse =
        EllipseParams::new(e.center(), ra, rb, e.angle()).expect("scaled ellipse is valid");
    Scaffold {
        rectangle,
        rhombus,
        similar_ellipse,
    }
}

/// Slopes of the asymptotes of the difference-of-squares hyperbola.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymptoteSlopes {
    /// Roots of `B m² + 2C m + A = 0`.
    Slopes(f64, f64),
    /// `B = 0`: one vertical and one horizontal asymptote.
    AxisAligned,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperbola {
    pub conic: ConicCoeffs,
    pub slopes: AsymptoteSlopes,
    /// Unit directions of the asymptotes: the bisectors of the two lines.
    pub asymptotes: [Vec2; 2],
}

/// The locus `d(P, l1)² − d(P, l2)² = k`.
pub fn hyperbola_from_line_pair(lines: &LinePair, k: f64) -> Result<Hyperbola> {
    if !k.is_finite() || k == 0.0 {
        return Err(GeomError::InvalidParameter(format!("k must be nonzero, got {k}")));
    }
    let (v1, v2) = lines.normals();
    let a = v1.x * v1.x - v2.x * v2.x;
    let b = v1.y * v1.y - v2.y * v2.y;
    let c = v1.x * v1.y - v2.x * v2.y;
    let conic = ConicCoeffs {
        a,
        b,
        c,
        d: 0.0,
        e: 0.0,
        f: -k,
    }
    .translated(lines.point());

    let slopes = if b.abs() <= EPS_INDEP {
        AsymptoteSlopes::AxisAligned
    } else {
        // stable roots of b m² + 2c m + a = 0
        let disc = (c * c - a * b).max(0.0).sqrt();
        let q = -(c + if c >= 0.0 { disc } else { -disc });
        if q == 0.0 {
            let m = (-a / b).sqrt();
            AsymptoteSlopes::Slopes(m, -m)
        } else {
            AsymptoteSlopes::Slopes(q / b, a / q)
        }
    };

    let (d1, d2) = (lines.dir1(), lines.dir2());
    let sum = (d1 + d2).normalized().expect("independent directions");
    let diff = (d1 - d2).normalized().expect("independent directions");
    Ok(Hyperbola {
        conic,
        slopes,
        asymptotes: [sum, diff],
    })
}

/// The ellipse with the given eccentrices and constant.
pub fn ellipse_from_eccentrix_form(f: &EccentrixForm) -> EllipseParams {
    let lines = f.lines();
    let cos = lines.theta().cos();
    let root = f.constant().sqrt();
    let a = root / (1.0 - cos).sqrt();
    let b = root / (1.0 + cos).sqrt();
    EllipseParams::new(lines.point(), a, b, lines.acute_bisector().angle())
        .expect("positive semi-axes")
}

/// Eccentrices (bounding-rectangle diagonals) and constant `2a²b²/(a²+b²)`.
pub fn eccentrix_form_from_ellipse(e: &EllipseParams) -> EccentrixForm {
    let [d1, d2] = e.eccentrix_directions();
    let lines = LinePair::new(e.center(), d1, d2).expect("diagonals are independent");
    let (a2, b2) = (e.a() * e.a(), e.b() * e.b());
    EccentrixForm::new(lines, 2.0 * a2 * b2 / (a2 + b2)).expect("positive constant")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{dot, Exponent, MetricSpec};
    use crate::vec2::line_distance;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    fn frame_with_cos(cos: f64) -> Frame2 {
        let t = cos.acos();
        Frame2::new(Vec2::new(1.0, 0.0), Vec2::from_angle(t)).unwrap()
    }

    fn same_axis(a: f64, b: f64) -> bool {
        let d = (a - b).rem_euclid(PI);
        d.min(PI - d) < 1e-9
    }

    #[test]
    fn ellipse_params_normalize_axes() {
        let e = EllipseParams::new(Vec2::ZERO, 1.0, 2.0, 0.0).unwrap();
        assert_eq!((e.a(), e.b()), (2.0, 1.0));
        assert!(same_axis(e.angle(), FRAC_PI_2));
        assert!(EllipseParams::new(Vec2::ZERO, 0.0, 2.0, 0.0).is_err());
        assert!(EllipseParams::new(Vec2::ZERO, 1.0, 2.0, f64::NAN).is_err());
    }

    #[test]
    fn ellipse_from_ball_examples() {
        let c = ellipse_from_ball(&Frame2::identity(), Vec2::ZERO, 1.0).unwrap();
        assert!(rel(c.a(), 1.0) < 1e-15 && rel(c.b(), 1.0) < 1e-15);
        assert!(ellipse_from_ball_strict(&Frame2::identity(), Vec2::ZERO, 1.0).is_err());

        let e = ellipse_from_ball(&frame_with_cos(0.6), Vec2::ZERO, 1.0).unwrap();
        assert!(rel(e.a(), 1.581_138_830_084_189_7) < 1e-14, "{}", e.a());
        assert!(rel(e.b(), 0.790_569_415_042_094_8) < 1e-14, "{}", e.b());
        let r = SQRT_2 * e.a() * e.b() / e.a().hypot(e.b());
        assert!(rel(r, 1.0) < 1e-14);

        let fig = Frame2::normalized(Vec2::new(3.0, -1.0), Vec2::new(-1.0, 5.0)).unwrap();
        let e = ellipse_from_ball(&fig, Vec2::ZERO, 1.0).unwrap();
        assert!(rel(e.a(), 1.408_784_618_705_756) < 1e-14, "{}", e.a());
        assert!(rel(e.b(), 0.817_549_461_860_182_2) < 1e-14, "{}", e.b());
        let (back, r) = ball_from_ellipse(&e);
        assert!(rel(r, 1.0) < 1e-14);
        assert!(rel(back.cos_theta(), fig.cos_theta()) < 1e-12);
    }

    #[test]
    fn ellipse_from_ball_points_satisfy_the_metric() {
        let fig = Frame2::normalized(Vec2::new(3.0, -1.0), Vec2::new(-1.0, 5.0)).unwrap();
        let center = Vec2::new(2.0, -1.0);
        let e = ellipse_from_ball(&fig, center, 1.7).unwrap();
        let m = MetricSpec::unweighted(fig.to_frame(), Exponent::Finite(2.0));
        for k in 0..100 {
            let p = e.point_at(k as f64 * 0.0628);
            let d = m.distance_coords(&[center.x, center.y], &[p.x, p.y]);
            assert!(rel(d, 1.7) < 1e-12, "{d}");
        }
    }

    #[test]
    fn weighted_ball_ellipse() {
        let spec = BallSpec::new(Frame2::identity(), [2.0, 1.0], Vec2::new(1.0, 1.0), 3.0, BallKind::Euclidean).unwrap();
        let e = ellipse_from_weighted_ball(&spec).unwrap();
        assert!(rel(e.a(), 3.0) < 1e-15 && rel(e.b(), 1.5) < 1e-15);
        assert!(same_axis(e.angle(), FRAC_PI_2));

        let fig = Frame2::normalized(Vec2::new(3.0, -1.0), Vec2::new(-1.0, 5.0)).unwrap();
        let unit = BallSpec::unit_weights(fig, Vec2::ZERO, 1.0, BallKind::Euclidean).unwrap();
        let e = ellipse_from_weighted_ball(&unit).unwrap();
        let f = ellipse_from_ball(&fig, Vec2::ZERO, 1.0).unwrap();
        assert!(rel(e.a(), f.a()) < 1e-14 && rel(e.b(), f.b()) < 1e-14);
        assert!(same_axis(e.angle(), f.angle()));

        let spec = BallSpec::new(fig, [0.3, 4.0], Vec2::new(-2.0, 0.5), 1.5, BallKind::Euclidean).unwrap();
        let e = ellipse_from_weighted_ball(&spec).unwrap();
        let g = EllipseParams::from_conic(&crate::planar::euclidean_circle_conic(&spec).unwrap()).unwrap();
        assert!(rel(e.a(), g.a()) < 1e-12 && rel(e.b(), g.b()) < 1e-12);
        assert!(same_axis(e.angle(), g.angle()));
        for k in 0..50 {
            let p = e.point_at(k as f64 * 0.13);
            assert!(rel(spec.distance_from_center(p), 1.5) < 1e-13);
        }
    }

    #[test]
    fn weighted_ball_ellipse_nearly_parallel_frame() {
        let frame = Frame2::new(Vec2::new(1.0, 0.0), Vec2::from_angle(1e-3)).unwrap();
        let spec = BallSpec::new(frame, [10.0, 0.1], Vec2::ZERO, 1.0, BallKind::Euclidean).unwrap();
        let e = ellipse_from_weighted_ball(&spec).unwrap();
        for k in 0..200 {
            let p = e.point_at(k as f64 * 0.031);
            assert!(rel(spec.distance_from_center(p), 1.0) < 1e-10);
        }
    }

    #[test]
    fn ball_from_ellipse_examples() {
        let circle = EllipseParams::new(Vec2::ZERO, 1.0, 1.0, 0.0).unwrap();
        let (f, r) = ball_from_ellipse(&circle);
        assert!(rel(r, 1.0) < 1e-15);
        assert!(f.is_orthogonal());
        assert!(rel(f.v1().x.abs(), 0.5f64.sqrt()) < 1e-15);

        let e = EllipseParams::new(Vec2::ZERO, 2.0, 1.0, 0.0).unwrap();
        let (f, r) = ball_from_ellipse(&e);
        assert!(rel(r, 1.264_911_064_067_351_7) < 1e-15);
        // x − 2y = 0 and x + 2y = 0 have normals ∝ (1, ∓2)
        let s5 = 5f64.sqrt();
        assert!((f.v1() - Vec2::new(1.0 / s5, -2.0 / s5)).norm() < 1e-15);
        assert!((f.v2() - Vec2::new(1.0 / s5, 2.0 / s5)).norm() < 1e-15);
    }

    #[test]
    fn round_trip_ball_ellipse_ball() {
        let e = EllipseParams::new(Vec2::new(-3.0, 4.0), 5.0, 1.25, 2.0).unwrap();
        let (f, r) = ball_from_ellipse(&e);
        let back = ellipse_from_ball(&f, e.center(), r).unwrap();
        assert!(rel(back.a(), e.a()) < 1e-12);
        assert!(rel(back.b(), e.b()) < 1e-12);
        assert!(same_axis(back.angle(), e.angle()));
    }

    #[test]
    fn rectangle_examples() {
        let sq = RectangleSpec::new(Vec2::ZERO, 1.0, 1.0, 0.0).unwrap();
        let (f, r) = taxicab_ball_from_rectangle(&sq);
        assert!(rel(r, SQRT_2) < 1e-15);
        assert!(f.is_orthogonal());

        let rect = RectangleSpec::new(Vec2::new(1.0, 2.0), 3.0, 4.0, 0.3).unwrap();
        let (f, r) = taxicab_ball_from_rectangle(&rect);
        assert!(rel(r, 4.8) < 1e-15);
        let c = rect.center;
        let mut max_dev: f64 = 0.0;
        for (i, corner) in rect.corners().iter().enumerate() {
            let next = rect.corners()[(i + 1) % 4];
            for k in 0..25 {
                let p = *corner + (next - *corner) * (k as f64 / 25.0);
                let s = line_distance(p, c, f.v1()) + line_distance(p, c, f.v2());
                max_dev = max_dev.max((s - r).abs());
            }
        }
        assert!(max_dev < 1e-12, "{max_dev}");
    }

    #[test]
    fn rectangle_rotation_rotates_frame() {
        let r0 = RectangleSpec::new(Vec2::ZERO, 3.0, 4.0, 0.0).unwrap();
        let r1 = RectangleSpec::new(Vec2::new(5.0, -2.0), 3.0, 4.0, 0.9).unwrap();
        let (f0, rad0) = taxicab_ball_from_rectangle(&r0);
        let (f1, rad1) = taxicab_ball_from_rectangle(&r1);
        assert!(rel(rad0, rad1) < 1e-15);
        assert!((f0.v1().rotate(0.9) - f1.v1()).norm() < 1e-12);
        assert!((f0.v2().rotate(0.9) - f1.v2()).norm() < 1e-12);
    }

    #[test]
    fn rhombus_examples() {
        let sq = RhombusSpec::new(Vec2::ZERO, 1.0, 1.0, 0.0).unwrap();
        assert!(rel(maximum_ball_from_rhombus(&sq).1, 0.5f64.sqrt()) < 1e-15);

        let rh = RhombusSpec::new(Vec2::new(-1.0, 0.5), 3.0, 4.0, -0.4).unwrap();
        let (f, r) = maximum_ball_from_rhombus(&rh);
        assert!(rel(r, 2.4) < 1e-15);
        let c = rh.center;
        let verts = rh.vertices();
        for v in verts {
            assert!(rel(line_distance(v, c, f.v1()), r) < 1e-12);
            assert!(rel(line_distance(v, c, f.v2()), r) < 1e-12);
        }
        for i in 0..4 {
            let (p, q) = (verts[i], verts[(i + 1) % 4]);
            for k in 0..25 {
                let x = p + (q - p) * (k as f64 / 25.0);
                let m = line_distance(x, c, f.v1()).max(line_distance(x, c, f.v2()));
                assert!(rel(m, r) < 1e-12);
            }
        }
    }

    #[test]
    fn eccentricity_examples() {
        let circle = EllipseParams::new(Vec2::ZERO, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(eccentricity(&circle), 0.0);
        let e = EllipseParams::new(Vec2::ZERO, SQRT_2, 1.0, 0.0).unwrap();
        assert!(rel(eccentricity(&e), 0.707_106_781_186_547_5) < 1e-15);
        let theta = 2.0 * (e.b() / e.a()).atan();
        assert!(rel(eccentricity_from_angle(theta), eccentricity(&e)) < 1e-12);
        let e = EllipseParams::new(Vec2::ZERO, 2.0, 1.0, 0.0).unwrap();
        assert!(rel(eccentricity(&e), 0.866_025_403_784_438_6) < 1e-15);
    }

    #[test]
    fn eccentric_radius_examples() {
        let circle = EllipseParams::new(Vec2::ZERO, 1.0, 1.0, 0.0).unwrap();
        assert!(rel(eccentric_radius(&circle), 1.0) < 1e-15);
        let e = EllipseParams::new(Vec2::ZERO, 2.0, 1.0, 0.0).unwrap();
        let big_r = eccentric_radius(&e);
        assert!(rel(big_r, 2.5f64.sqrt()) < 1e-15);
        let (f, r) = ball_from_ellipse(&e);
        assert!(rel(big_r * r, 2.0) < 1e-15);
        assert!(rel(f.sin_theta(), r / big_r) < 1e-14);
    }

    #[test]
    fn conjugate_chords_examples() {
        let e = EllipseParams::new(Vec2::ZERO, 2.0, 1.0, 0.0).unwrap();
        let [c1, c2] = conjugate_diameter_chords(&e).unwrap();
        let s1 = c1.end - c1.midpoint();
        let s2 = c2.end - c2.midpoint();
        assert!(rel(s1.norm(), 2.5f64.sqrt()) < 1e-14);
        assert!(rel(s2.norm(), 2.5f64.sqrt()) < 1e-14);
        assert!(rel(s1.dot(s1) + s2.dot(s2), 5.0) < 1e-14);
        assert!(rel(s1.cross(s2).abs(), 2.0) < 1e-14);

        let circle = EllipseParams::new(Vec2::new(1.0, 1.0), 3.0, 3.0, 0.0).unwrap();
        let [c1, c2] = conjugate_diameter_chords(&circle).unwrap();
        assert!(rel(c1.length(), 6.0) < 1e-14 && rel(c2.length(), 6.0) < 1e-14);
        let (d1, d2) = (c1.end - c1.start, c2.end - c2.start);
        assert!(d1.dot(d2).abs() < 1e-12);
    }

    #[test]
    fn scaffold_examples() {
        let circle = EllipseParams::new(Vec2::ZERO, 1.0, 1.0, 0.0).unwrap();
        let s = scaffold(&circle);
        assert!((s.rectangle[0] - Vec2::new(1.0, 1.0)).norm() < 1e-15);
        let side = s.rhombus[0].distance(s.rhombus[1]);
        assert!(rel(side, 2.0) < 1e-15);

        let e = EllipseParams::new(Vec2::new(0.5, -2.0), 2.0, 1.0, 0.7).unwrap();
        let s = scaffold(&e);
        assert!(rel(s.rhombus[0].distance(s.rhombus[2]), 4.0 * SQRT_2) < 1e-14);
        assert!(rel(s.rhombus[1].distance(s.rhombus[3]), 2.0 * SQRT_2) < 1e-14);
        assert!(rel(s.rectangle[0].distance(s.rectangle[2]), 2.0 * 5f64.sqrt()) < 1e-14);
        for v in s.rectangle.iter().chain(s.rhombus.iter()) {
            let l = e.to_local(*v);
            let lhs = l.x * l.x / (2.0 * 4.0) + l.y * l.y / 2.0;
            assert!((lhs - 1.0).abs() < 1e-13, "{lhs}");
        }
        assert!(rel(s.rhombus[0].distance(s.rhombus[1]), 2.0 * eccentric_radius(&e)) < 1e-14);
    }

    #[test]
    fn hyperbola_examples() {
        let lines = LinePair::new(Vec2::ZERO, Vec2::new(0.0, 1.0), Vec2::new(1.0, 0.0)).unwrap();
        let (n1, n2) = lines.normals();
        assert!((n1 - Vec2::new(1.0, 0.0)).norm() < 1e-15, "{n1:?}");
        assert!((n2 - Vec2::new(0.0, -1.0)).norm() < 1e-15, "{n2:?}");
        let h = hyperbola_from_line_pair(&lines, 1.0).unwrap();
        assert_eq!((h.conic.a, h.conic.b, h.conic.c, h.conic.f), (1.0, -1.0, 0.0, -1.0));
        match h.slopes {
            AsymptoteSlopes::Slopes(m1, m2) => {
                assert!((m1 * m2 + 1.0).abs() < 1e-15);
                assert!((m1.abs() - 1.0).abs() < 1e-15);
            }
            AsymptoteSlopes::AxisAligned => panic!("expected slopes"),
        }

        let fig = Frame2::normalized(Vec2::new(3.0, -1.0), Vec2::new(-1.0, 5.0)).unwrap();
        let lines = LinePair::from_normals(Vec2::ZERO, &fig);
        let h = hyperbola_from_line_pair(&lines, 1.0).unwrap();
        assert!(h.conic.delta() < 0.0);
        assert!((h.conic.delta() + 9.8 / 13.0).abs() < 1e-14);
        match h.slopes {
            AsymptoteSlopes::Slopes(m1, m2) => assert!((m1 * m2 + 1.0).abs() < 1e-12),
            AsymptoteSlopes::AxisAligned => panic!("expected slopes"),
        }
        assert!(hyperbola_from_line_pair(&lines, 0.0).is_err());
    }

    #[test]
    fn hyperbola_sign_pair_shares_asymptotes() {
        let lines = LinePair::new(Vec2::new(1.0, 2.0), Vec2::new(1.0, 0.3), Vec2::new(0.2, 1.0)).unwrap();
        let hp = hyperbola_from_line_pair(&lines, 2.0).unwrap();
        let hm = hyperbola_from_line_pair(&lines, -2.0).unwrap();
        assert_eq!(hp.asymptotes, hm.asymptotes);
        assert_eq!(hp.slopes, hm.slopes);
        // points far out along an asymptote approach both curves
        let dir = hp.asymptotes[0];
        for h in [&hp, &hm] {
            let p = lines.point() + dir * 1e4;
            let (d1, d2) = lines.distances(p);
            let scale = d1 * d1 + d2 * d2;
            assert!((d1 * d1 - d2 * d2).abs() / scale < 1e-10);
            let _ = h;
        }
    }

    #[test]
    fn axis_aligned_asymptotes() {
        // v12 = v22 ⇒ B = 0
        let v1 = Vec2::new(0.6, 0.8);
        let v2 = Vec2::new(-0.6, 0.8);
        let lines = LinePair::new(Vec2::ZERO, v1.perp(), v2.perp()).unwrap();
        let h = hyperbola_from_line_pair(&lines, 1.0).unwrap();
        assert_eq!(h.slopes, AsymptoteSlopes::AxisAligned);
        for a in h.asymptotes {
            assert!(a.x.abs() < 1e-15 || a.y.abs() < 1e-15, "{a:?}");
        }
    }

    #[test]
    fn eccentrix_form_examples() {
        let perp = LinePair::new(Vec2::ZERO, Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)).unwrap();
        let e = ellipse_from_eccentrix_form(&EccentrixForm::new(perp, 1.0).unwrap());
        assert!(rel(e.a(), 1.0) < 1e-15 && rel(e.b(), 1.0) < 1e-15);

        let lines = LinePair::new(Vec2::new(2.0, 1.0), Vec2::new(1.0, 0.0), Vec2::from_angle(0.6f64.acos())).unwrap();
        let form = EccentrixForm::new(lines, 4.0).unwrap();
        let e = ellipse_from_eccentrix_form(&form);
        assert!(rel(e.a(), 3.162_277_660_168_379_5) < 1e-14);
        assert!(rel(e.b(), 1.581_138_830_084_189_7) < 1e-14);
        for k in 0..100 {
            let p = e.point_at(k as f64 * 0.0628);
            assert!(form.residual(p).abs() <= 1e-12 * 4.0);
        }
        let back = eccentrix_form_from_ellipse(&e);
        assert!(rel(back.constant(), 4.0) < 1e-13);
        assert!(back.lines().same_lines(&lines, 1e-12));
    }

    #[test]
    fn eccentrix_constant_examples() {
        let circle = EllipseParams::new(Vec2::ZERO, 1.0, 1.0, 0.0).unwrap();
        assert!(rel(eccentrix_form_from_ellipse(&circle).constant(), 1.0) < 1e-15);
        let e = EllipseParams::new(Vec2::ZERO, 3.0, 4.0, 0.0).unwrap();
        let form = eccentrix_form_from_ellipse(&e);
        assert!(rel(form.constant(), 11.52) < 1e-15);

        // Q1 = l1 ∩ ellipse; d(Q1, l2)² is the constant
        let [chord, _] = conjugate_diameter_chords(&e).unwrap();
        let (_, d2) = form.lines().distances(chord.end);
        assert!(rel(d2 * d2, 11.52) < 1e-13);
        let (d1, _) = form.lines().distances(chord.end);
        assert!(d1 < 1e-12);
    }

    #[test]
    fn conic_round_trip() {
        let e = EllipseParams::new(Vec2::new(3.0, -1.0), 4.0, 1.5, 2.2).unwrap();
        let back = EllipseParams::from_conic(&e.to_conic()).unwrap();
        assert!((back.center() - e.center()).norm() < 1e-12);
        assert!(rel(back.a(), 4.0) < 1e-12 && rel(back.b(), 1.5) < 1e-12);
        assert!(same_axis(back.angle(), e.angle()));
        let hyper = ConicCoeffs { a: 1.0, b: -1.0, c: 0.0, d: 0.0, e: 0.0, f: -1.0 };
        assert!(EllipseParams::from_conic(&hyper).is_none());
    }

    #[test]
    fn asymptotes_equal_eccentrices() {
        // x²/a² − y²/b² = 1 has asymptotes along (a, ±b)
        let e = EllipseParams::new(Vec2::ZERO, 3.0, 2.0, 0.0).unwrap();
        for d in e.eccentrix_directions() {
            let p = d * 1e5;
            let lhs = p.x * p.x / 9.0 - p.y * p.y / 4.0;
            assert!(lhs.abs() / (p.x * p.x / 9.0) < 1e-12);
        }
        let _ = dot(&[1.0], &[1.0]);
    }

    #[test]
    fn line_pair_validation() {
        assert!(LinePair::new(Vec2::ZERO, Vec2::new(1.0, 0.0), Vec2::new(2.0, 0.0)).is_err());
        assert!(LinePair::new(Vec2::ZERO, Vec2::ZERO, Vec2::new(0.0, 1.0)).is_err());
        assert!(EccentrixForm::new(
            LinePair::new(Vec2::ZERO, Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)).unwrap(),
            0.0
        )
        .is_err());
    }
}
