//! Circles (level sets) of the family in the plane.
//!
//! For a frame `(v1, v2)` and weights `(λ1, λ2)` the circle of radius `r`
//! about `C` is a parallelogram for `p = 1` and `p = ∞` and an ellipse for
//! `p = 2`. Throughout, `l1` and `l2` are the lines through `C` with
//! normals `v1` and `v2`.

use std::f64::consts::TAU;

use crate::error::{GeomError, Result};
use crate::metric::{validate_frame, Exponent, Frame, MetricSpec};
use crate::tol::{DISCRIMINANT_EPS, EPS_INDEP, SHAPE_REL};
use crate::vec2::Vec2;

/// A planar frame with its determinant `τ` and the non-obtuse angle `θ`
/// between `v1` and `v2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame2 {
    v1: Vec2,
    v2: Vec2,
    tau: f64,
    cos_theta: f64,
    theta: f64,
}

impl Frame2 {
    /// Both vectors must already be unit length.
    pub fn new(v1: Vec2, v2: Vec2) -> Result<Self> {
        Self::build(v1, v2, false)
    }

    /// Normalizes both vectors first.
    pub fn normalized(v1: Vec2, v2: Vec2) -> Result<Self> {
        Self::build(v1, v2, true)
    }

    fn build(v1: Vec2, v2: Vec2, normalize: bool) -> Result<Self> {
        let frame = validate_frame(vec![vec![v1.x, v1.y], vec![v2.x, v2.y]], normalize)?;
        Self::from_frame(&frame)
    }

    pub fn from_frame(frame: &Frame) -> Result<Self> {
        if frame.dim() != 2 {
            return Err(GeomError::DimensionMismatch {
                expected: 2,
                found: frame.dim(),
            });
        }
        let r = frame.rows();
        let v1 = Vec2::new(r[0][0], r[0][1]);
        let v2 = Vec2::new(r[1][0], r[1][1]);
        let tau = v1.cross(v2);
        let cos_theta = v1.dot(v2).abs();
        Ok(Self {
            v1,
            v2,
            tau,
            cos_theta,
            theta: tau.abs().atan2(cos_theta),
        })
    }

    pub fn identity() -> Self {
        Self::from_frame(&Frame::identity(2)).expect("identity frame is valid")
    }

    pub fn to_frame(&self) -> Frame {
        validate_frame(
            vec![vec![self.v1.x, self.v1.y], vec![self.v2.x, self.v2.y]],
            false,
        )
        .expect("Frame2 is validated at construction")
    }

    pub fn v1(&self) -> Vec2 {
        self.v1
    }

    pub fn v2(&self) -> Vec2 {
        self.v2
    }

    /// `τ = v11 v22 − v12 v21`.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Non-obtuse angle between `v1` and `v2`, in `(0, π/2]`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `|⟨v1, v2⟩|`.
    pub fn cos_theta(&self) -> f64 {
        self.cos_theta
    }

    /// `|τ|`.
    pub fn sin_theta(&self) -> f64 {
        self.tau.abs()
    }

    pub fn is_orthogonal(&self) -> bool {
        self.cos_theta <= SHAPE_REL
    }

    /// Unit direction of `l1` (perpendicular to `v1`).
    pub fn l1_direction(&self) -> Vec2 {
        self.v1.perp()
    }

    /// Unit direction of `l2` (perpendicular to `v2`).
    pub fn l2_direction(&self) -> Vec2 {
        self.v2.perp()
    }
}

/// Which member of the family a planar ball uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BallKind {
    Taxicab,
    Euclidean,
    Maximum,
    General(f64),
}

impl BallKind {
    pub fn exponent(self) -> Result<Exponent> {
        match self {
            BallKind::Taxicab => Ok(Exponent::Finite(1.0)),
            BallKind::Euclidean => Ok(Exponent::Finite(2.0)),
            BallKind::Maximum => Ok(Exponent::Infinity),
            BallKind::General(p) => Exponent::new(p),
        }
    }

    /// Canonical kind for an exponent (`1`, `2`, `∞` map to the named kinds).
    pub fn from_exponent(e: Exponent) -> Self {
        match e {
            Exponent::Infinity => BallKind::Maximum,
            Exponent::Finite(p) if p == 1.0 => BallKind::Taxicab,
            Exponent::Finite(p) if p == 2.0 => BallKind::Euclidean,
            Exponent::Finite(p) => BallKind::General(p),
        }
    }
}

/// A circle `{P : d(C, P) = r}` in the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSpec {
    frame: Frame2,
    weights: [f64; 2],
    center: Vec2,
    radius: f64,
    kind: BallKind,
    metric: MetricSpec,
}

impl BallSpec {
    pub fn new(
        frame: Frame2,
        weights: [f64; 2],
        center: Vec2,
        radius: f64,
        kind: BallKind,
    ) -> Result<Self> {
        if !center.is_finite() {
            return Err(GeomError::NonFinite("ball center"));
        }
        if !radius.is_finite() {
            return Err(GeomError::NonFinite("ball radius"));
        }
        if radius <= 0.0 {
            return Err(GeomError::NonPositive {
                name: "radius",
                value: radius,
            });
        }
        let metric = MetricSpec::new(frame.to_frame(), weights.to_vec(), kind.exponent()?)?;
        Ok(Self {
            frame,
            weights,
            center,
            radius,
            kind,
            metric,
        })
    }

    /// Unit weights, as used by the rectangle/rhombus/ellipse conversions.
    pub fn unit_weights(frame: Frame2, center: Vec2, radius: f64, kind: BallKind) -> Result<Self> {
        Self::new(frame, [1.0, 1.0], center, radius, kind)
    }

    pub fn frame(&self) -> &Frame2 {
        &self.frame
    }

    pub fn weights(&self) -> [f64; 2] {
        self.weights
    }

    pub fn center(&self) -> Vec2 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn kind(&self) -> BallKind {
        self.kind
    }

    /// The distance function whose circle this is.
    pub fn metric(&self) -> &MetricSpec {
        &self.metric
    }

    pub fn with_kind(&self, kind: BallKind) -> Result<Self> {
        Self::new(self.frame, self.weights, self.center, self.radius, kind)
    }

    /// `d(C, p)` under this ball's metric.
    pub fn distance_from_center(&self, p: Vec2) -> f64 {
        self.metric
            .distance_coords(&[self.center.x, self.center.y], &[p.x, p.y])
    }

    pub fn weights_equal(&self) -> bool {
        let [a, b] = self.weights;
        (a - b).abs() <= SHAPE_REL * a.max(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    Parallelogram,
    Rectangle,
    Rhombus,
    Square,
    Ellipse,
    Circle,
}

impl ShapeKind {
    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Parallelogram => "parallelogram",
            ShapeKind::Rectangle => "rectangle",
            ShapeKind::Rhombus => "rhombus",
            ShapeKind::Square => "square",
            ShapeKind::Ellipse => "ellipse",
            ShapeKind::Circle => "circle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeReport {
    pub kind: ShapeKind,
    pub weights_equal: bool,
    pub frame_orthogonal: bool,
}

/// Shape of a taxicab, Euclidean or maximum circle from the weight and
/// orthogonality flags.
pub fn classify_ball_shape(spec: &BallSpec) -> Result<ShapeReport> {
    let weights_equal = spec.weights_equal();
    let frame_orthogonal = spec.frame().is_orthogonal();
    let kind = match (spec.kind(), weights_equal, frame_orthogonal) {
        (BallKind::Taxicab | BallKind::Maximum, true, true) => ShapeKind::Square,
        (BallKind::Taxicab, true, false) => ShapeKind::Rectangle,
        (BallKind::Taxicab, false, true) => ShapeKind::Rhombus,
        (BallKind::Maximum, true, false) => ShapeKind::Rhombus,
        (BallKind::Maximum, false, true) => ShapeKind::Rectangle,
        (BallKind::Taxicab | BallKind::Maximum, false, false) => ShapeKind::Parallelogram,
        (BallKind::Euclidean, true, true) => ShapeKind::Circle,
        (BallKind::Euclidean, _, _) => ShapeKind::Ellipse,
        (BallKind::General(p), _, _) => {
            return Err(GeomError::UnsupportedExponent(p.to_string()))
        }
    };
    Ok(ShapeReport {
        kind,
        weights_equal,
        frame_orthogonal,
    })
}

/// Four vertices in counterclockwise order plus the shape tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parallelogram4 {
    pub vertices: [Vec2; 4],
    pub shape: ShapeKind,
}

impl Parallelogram4 {
    pub fn centroid(&self) -> Vec2 {
        let s = self.vertices.iter().fold(Vec2::ZERO, |acc, &v| acc + v);
        s / 4.0
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1 (mod 4)`.
    pub fn edge(&self, i: usize) -> (Vec2, Vec2) {
        (self.vertices[i % 4], self.vertices[(i + 1) % 4])
    }

    /// Euclidean distance from `p` to the polygon boundary.
    pub fn distance_to_boundary(&self, p: Vec2) -> f64 {
        (0..4)
            .map(|i| {
                let (a, b) = self.edge(i);
                segment_distance(p, a, b)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Shape recovered from side and diagonal measurements alone: equal
    /// diagonals make a rectangle, perpendicular diagonals a rhombus.
    pub fn measured_shape(&self, rel_tol: f64) -> ShapeKind {
        let [a, b, c, d] = self.vertices;
        let d1 = c - a;
        let d2 = d - b;
        let scale = d1.norm().max(d2.norm());
        let equal_diagonals = (d1.norm() - d2.norm()).abs() <= rel_tol * scale;
        let perpendicular = d1.dot(d2).abs() <= rel_tol * scale * scale;
        match (equal_diagonals, perpendicular) {
            (true, true) => ShapeKind::Square,
            (true, false) => ShapeKind::Rectangle,
            (false, true) => ShapeKind::Rhombus,
            (false, false) => ShapeKind::Parallelogram,
        }
    }
}

fn segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

fn require_kind(spec: &BallSpec, wanted: BallKind) -> Result<()> {
    if spec.kind() == wanted {
        Ok(())
    } else {
        Err(GeomError::UnsupportedExponent(format!(
            "{:?} (expected {:?})",
            spec.kind(),
            wanted
        )))
    }
}

/// The unit-circle vertices `A1`, `A2` of the taxicab circle about the
/// origin: `A1` lies on `l2`, `A2` on `l1`.
fn taxicab_half_diagonals(frame: &Frame2, [l1, l2]: [f64; 2]) -> (Vec2, Vec2) {
    let (v1, v2, tau) = (frame.v1(), frame.v2(), frame.tau());
    let a1 = Vec2::new(v2.y, -v2.x) / (l1 * tau);
    let a2 = Vec2::new(-v1.y, v1.x) / (l2 * tau);
    (a1, a2)
}

/// Orders `[p0, p1, -p0, -p1]` counterclockwise, keeping `p0` first.
fn ccw_quad(center: Vec2, p0: Vec2, p1: Vec2, r: f64) -> [Vec2; 4] {
    let (q0, q1, q2, q3) = (p0, p1, -p0, -p1);
    let ordered = if p0.cross(p1) > 0.0 {
        [q0, q1, q2, q3]
    } else {
        [q0, q3, q2, q1]
    };
    ordered.map(|q| center + q * r)
}

/// The taxicab (`p = 1`) circle: a parallelogram whose diagonals lie on
/// `l1` and `l2`.
pub fn taxicab_circle(spec: &BallSpec) -> Result<Parallelogram4> {
    require_kind(spec, BallKind::Taxicab)?;
    let (a1, a2) = taxicab_half_diagonals(spec.frame(), spec.weights());
    Ok(Parallelogram4 {
        vertices: ccw_quad(spec.center(), a1, a2, spec.radius()),
        shape: classify_ball_shape(spec)?.kind,
    })
}

/// The maximum (`p = ∞`) circle: a parallelogram whose sides are parallel
/// to `l1` and `l2`.
pub fn maximum_circle(spec: &BallSpec) -> Result<Parallelogram4> {
    require_kind(spec, BallKind::Maximum)?;
    let (v1, v2, tau) = (spec.frame().v1(), spec.frame().v2(), spec.frame().tau());
    let [l1, l2] = spec.weights();
    let den = l1 * l2 * tau;
    let b1 = Vec2::new(-v1.y * l1 + v2.y * l2, v1.x * l1 - v2.x * l2) / den;
    let b2 = Vec2::new(-v1.y * l1 - v2.y * l2, v1.x * l1 + v2.x * l2) / den;
    Ok(Parallelogram4 {
        vertices: ccw_quad(spec.center(), b1, b2, spec.radius()),
        shape: classify_ball_shape(spec)?.kind,
    })
}

/// Coefficients of `A x² + B y² + 2C xy + 2D x + 2E y + F = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

/// Type of a real quadratic curve from its discriminants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicClass {
    Ellipse,
    /// `δ > 0` but no real points.
    ImaginaryEllipse,
    Hyperbola,
    Parabola,
    Degenerate,
}

impl ConicCoeffs {
    /// `δ = AB − C²`.
    pub fn delta(&self) -> f64 {
        self.a * self.b - self.c * self.c
    }

    /// The bordered determinant `Δ = det [[A, C, D], [C, B, E], [D, E, F]]`.
    pub fn big_delta(&self) -> f64 {
        let (a, b, c, d, e, f) = (self.a, self.b, self.c, self.d, self.e, self.f);
        a * (b * f - e * e) - c * (c * f - e * d) + d * (c * e - b * d)
    }

    pub fn evaluate(&self, p: Vec2) -> f64 {
        let (x, y) = (p.x, p.y);
        self.a * x * x
            + self.b * y * y
            + 2.0 * self.c * x * y
            + 2.0 * self.d * x
            + 2.0 * self.e * y
            + self.f
    }

    /// The same curve moved so that the old origin lands on `center`.
    pub fn translated(&self, center: Vec2) -> ConicCoeffs {
        let (h, k) = (center.x, center.y);
        let (a, b, c) = (self.a, self.b, self.c);
        ConicCoeffs {
            a,
            b,
            c,
            d: self.d - a * h - c * k,
            e: self.e - b * k - c * h,
            f: self.f + a * h * h + b * k * k + 2.0 * c * h * k - 2.0 * self.d * h - 2.0 * self.e * k,
        }
    }

    pub fn classify(&self) -> ConicClass {
        let scale = self.a.abs().max(self.b.abs()).max(self.c.abs()).max(f64::MIN_POSITIVE);
        let delta = self.delta();
        let big = self.big_delta();
        let big_scale = scale * scale * self.f.abs().max(self.d.abs()).max(self.e.abs()).max(scale);
        if big.abs() <= 1e-14 * big_scale {
            return ConicClass::Degenerate;
        }
        if delta.abs() <= 1e-14 * scale * scale {
            ConicClass::Parabola
        } else if delta < 0.0 {
            ConicClass::Hyperbola
        } else if big / (self.a + self.b) < 0.0 {
            ConicClass::Ellipse
        } else {
            ConicClass::ImaginaryEllipse
        }
    }

    /// Parameters `t` where `point + t·dir` meets the curve, smaller first.
    /// A discriminant within the tolerance of zero counts as tangency.
    pub fn intersect_line(&self, point: Vec2, dir: Vec2) -> Option<[f64; 2]> {
        // q(t) = α t² + 2β t + γ
        let alpha = self.a * dir.x * dir.x + self.b * dir.y * dir.y + 2.0 * self.c * dir.x * dir.y;
        let beta = self.a * point.x * dir.x
            + self.b * point.y * dir.y
            + self.c * (point.x * dir.y + point.y * dir.x)
            + self.d * dir.x
            + self.e * dir.y;
        let gamma = self.evaluate(point);
        if alpha.abs() <= f64::EPSILON * (self.a.abs() + self.b.abs() + self.c.abs()) {
            if beta == 0.0 {
                return None;
            }
            let t = -gamma / (2.0 * beta);
            return Some([t, t]);
        }
        let disc = beta * beta - alpha * gamma;
        let scale = (beta * beta).max((alpha * gamma).abs()).max(f64::MIN_POSITIVE);
        let disc = if disc < 0.0 && disc >= -DISCRIMINANT_EPS * scale {
            0.0
        } else {
            disc
        };
        if disc < 0.0 {
            return None;
        }
        let root = disc.sqrt();
        let q = -(beta + beta.signum() * root);
        let (t1, t2) = if q == 0.0 {
            (0.0, 0.0)
        } else {
            (q / alpha, gamma / q)
        };
        Some(if t1 <= t2 { [t1, t2] } else { [t2, t1] })
    }
}

/// Implicit equation of the Euclidean (`p = 2`) circle.
pub fn euclidean_circle_conic(spec: &BallSpec) -> Result<ConicCoeffs> {
    require_kind(spec, BallKind::Euclidean)?;
    let (v1, v2) = (spec.frame().v1(), spec.frame().v2());
    let [l1, l2] = spec.weights();
    let (w1, w2) = (l1 * l1, l2 * l2);
    let r = spec.radius();
    let origin = ConicCoeffs {
        a: w1 * v1.x * v1.x + w2 * v2.x * v2.x,
        b: w1 * v1.y * v1.y + w2 * v2.y * v2.y,
        c: w1 * v1.x * v1.y + w2 * v2.x * v2.y,
        d: 0.0,
        e: 0.0,
        f: -r * r,
    };
    Ok(origin.translated(spec.center()))
}

/// Ordered points on a ball boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<Vec2>,
    pub closed: bool,
}

/// `count` boundary points at equally spaced direction angles, starting at
/// angle 0 and running counterclockwise. Each direction `u` is scaled to
/// `C + r u / ‖u‖`, which lies exactly on the circle by homogeneity of the
/// norm.
pub fn ball_boundary_points(spec: &BallSpec, count: usize) -> Result<Polyline> {
    if count < 4 {
        return Err(GeomError::InvalidParameter(format!(
            "boundary needs at least 4 points, got {count}"
        )));
    }
    let metric = spec.metric();
    let points = (0..count)
        .map(|k| {
            let phi = TAU * k as f64 / count as f64;
            let u = Vec2::from_angle(phi);
            let n = metric.norm_coords(&[u.x, u.y]);
            spec.center() + u * (spec.radius() / n)
        })
        .collect();
    Ok(Polyline {
        points,
        closed: true,
    })
}

/// The four points where `l1` and `l2` cross the circle:
/// `[Q1, Q2, Q1', Q2']` with `Q1, Q1'` on `l1` and `Q2, Q2'` on `l2`.
///
/// On `l1` only the `v2` projection is nonzero, so these points are the
/// same for every exponent.
pub fn common_points(spec: &BallSpec) -> Result<[Vec2; 4]> {
    let f = spec.frame();
    let [l1, l2] = spec.weights();
    let (u1, u2) = (f.l1_direction(), f.l2_direction());
    let s1 = l2 * f.v2().dot(u1).abs();
    let s2 = l1 * f.v1().dot(u2).abs();
    if s1 <= EPS_INDEP || s2 <= EPS_INDEP {
        return Err(GeomError::DegenerateFrame("l1 or l2 is parallel to the other"));
    }
    let c = spec.center();
    let r = spec.radius();
    let q1 = u1 * (r / s1);
    let q2 = u2 * (r / s2);
    Ok([c + q1, c + q2, c - q1, c - q2])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn skew_frame() -> Frame2 {
        Frame2::normalized(Vec2::new(3.0, -1.0), Vec2::new(-1.0, 5.0)).unwrap()
    }

    fn unit_ball(frame: Frame2, kind: BallKind) -> BallSpec {
        BallSpec::unit_weights(frame, Vec2::ZERO, 1.0, kind).unwrap()
    }

    fn near(a: Vec2, b: Vec2, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn identity_taxicab_is_unit_diamond() {
        let p = taxicab_circle(&unit_ball(Frame2::identity(), BallKind::Taxicab)).unwrap();
        let want = [
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(-1.0, 0.0),
            Vec2::new(0.0, -1.0),
        ];
        for (v, w) in p.vertices.iter().zip(want) {
            assert!(near(*v, w, 1e-15), "{v:?}");
        }
        assert_eq!(p.shape, ShapeKind::Square);
    }

    #[test]
    fn skew_taxicab_first_vertex() {
        let p = taxicab_circle(&unit_ball(skew_frame(), BallKind::Taxicab)).unwrap();
        let a1 = Vec2::new(1.129_384_878_631_564, 0.225_876_975_726_312_8);
        assert!(near(p.vertices[0], a1, 1e-12), "{:?}", p.vertices[0]);
        assert_eq!(p.shape, ShapeKind::Rectangle);
    }

    #[test]
    fn identity_maximum_is_unit_square() {
        let p = maximum_circle(&unit_ball(Frame2::identity(), BallKind::Maximum)).unwrap();
        for v in p.vertices {
            assert!((v.x.abs() - 1.0).abs() < 1e-15 && (v.y.abs() - 1.0).abs() < 1e-15);
        }
        assert_eq!(p.shape, ShapeKind::Square);
    }

    #[test]
    fn skew_maximum_first_vertex() {
        let p = maximum_circle(&unit_ball(skew_frame(), BallKind::Maximum)).unwrap();
        let b1 = Vec2::new(1.493_600_558_173_905_8, 1.318_524_014_353_338_1);
        assert!(near(p.vertices[0], b1, 1e-12), "{:?}", p.vertices[0]);
        assert_eq!(p.shape, ShapeKind::Rhombus);
    }

    #[test]
    fn vertices_are_counterclockwise_for_negative_tau() {
        let f = Frame2::normalized(Vec2::new(-1.0, 5.0), Vec2::new(3.0, -1.0)).unwrap();
        assert!(f.tau() < 0.0);
        for p in [
            taxicab_circle(&unit_ball(f, BallKind::Taxicab)).unwrap(),
            maximum_circle(&unit_ball(f, BallKind::Maximum)).unwrap(),
        ] {
            for i in 0..4 {
                let (a, b) = p.edge(i);
                let (_, c) = p.edge(i + 1);
                assert!((b - a).cross(c - b) > 0.0);
            }
        }
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let s = unit_ball(Frame2::identity(), BallKind::Euclidean);
        assert!(taxicab_circle(&s).is_err());
        assert!(maximum_circle(&s).is_err());
        let t = unit_ball(Frame2::identity(), BallKind::Taxicab);
        assert!(euclidean_circle_conic(&t).is_err());
    }

    #[test]
    fn conic_examples() {
        let c = euclidean_circle_conic(&unit_ball(Frame2::identity(), BallKind::Euclidean)).unwrap();
        assert_eq!((c.a, c.b, c.c, c.d, c.e, c.f), (1.0, 1.0, 0.0, 0.0, 0.0, -1.0));

        let f = skew_frame();
        let c = euclidean_circle_conic(&unit_ball(f, BallKind::Euclidean)).unwrap();
        assert!((c.a - 12.2 / 13.0).abs() < 1e-15, "{}", c.a);
        assert!((c.b - 13.8 / 13.0).abs() < 1e-15, "{}", c.b);
        assert!((c.c + 6.4 / 13.0).abs() < 1e-15, "{}", c.c);
        assert!((c.delta() - 9.8 / 13.0).abs() < 1e-14);
        assert!((c.delta() - f.tau() * f.tau()).abs() < 1e-14);
        assert!((c.big_delta() + c.delta()).abs() < 1e-14);
        assert_eq!(c.classify(), ConicClass::Ellipse);
    }

    #[test]
    fn translated_conic_keeps_discriminants() {
        let s = BallSpec::new(skew_frame(), [0.7, 2.5], Vec2::new(3.0, -2.0), 1.5, BallKind::Euclidean)
            .unwrap();
        let c = euclidean_circle_conic(&s).unwrap();
        let r2 = 1.5 * 1.5;
        assert!((c.big_delta() + r2 * c.delta()).abs() < 1e-12 * c.delta());
        assert!(c.evaluate(s.center()) < 0.0);
        for p in ball_boundary_points(&s, 64).unwrap().points {
            assert!(c.evaluate(p).abs() < 1e-12, "{}", c.evaluate(p));
        }
    }

    #[test]
    fn boundary_cardinal_points() {
        let s = unit_ball(Frame2::identity(), BallKind::Euclidean);
        let pts = ball_boundary_points(&s, 4).unwrap().points;
        let want = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (p, (x, y)) in pts.iter().zip(want) {
            assert!(near(*p, Vec2::new(x, y), 1e-15), "{p:?}");
        }
        assert!(ball_boundary_points(&s, 3).is_err());
    }

    #[test]
    fn taxicab_samples_lie_on_parallelogram() {
        let s = BallSpec::new(skew_frame(), [1.3, 0.4], Vec2::new(-1.0, 2.0), 2.0, BallKind::Taxicab)
            .unwrap();
        let poly = taxicab_circle(&s).unwrap();
        for p in ball_boundary_points(&s, 2000).unwrap().points {
            assert!(poly.distance_to_boundary(p) <= 1e-9, "{p:?}");
        }
    }

    #[test]
    fn common_points_shared_between_exponents() {
        let f = skew_frame();
        let q = |kind| {
            let s = BallSpec::new(f, [1.0, 1.0], Vec2::ZERO, 1.0, kind).unwrap();
            common_points(&s).unwrap()
        };
        let q1 = q(BallKind::Taxicab);
        let q3 = q(BallKind::General(3.0));
        for (a, b) in q1.iter().zip(q3.iter()) {
            assert!(near(*a, *b, 1e-15));
        }
        for kind in [BallKind::General(0.7), BallKind::Taxicab, BallKind::General(3.0), BallKind::Maximum] {
            let s = BallSpec::new(f, [1.0, 1.0], Vec2::ZERO, 1.0, kind).unwrap();
            for p in q1 {
                assert!((s.distance_from_center(p) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn classification_tables() {
        let perp = Frame2::identity();
        let skew = skew_frame();
        let cases = [
            (BallKind::Taxicab, [1.0, 1.0], perp, ShapeKind::Square),
            (BallKind::Taxicab, [1.0, 1.0], skew, ShapeKind::Rectangle),
            (BallKind::Taxicab, [1.0, 2.0], perp, ShapeKind::Rhombus),
            (BallKind::Taxicab, [1.0, 2.0], skew, ShapeKind::Parallelogram),
            (BallKind::Maximum, [1.0, 1.0], perp, ShapeKind::Square),
            (BallKind::Maximum, [1.0, 1.0], skew, ShapeKind::Rhombus),
            (BallKind::Maximum, [1.0, 2.0], perp, ShapeKind::Rectangle),
            (BallKind::Maximum, [1.0, 2.0], skew, ShapeKind::Parallelogram),
            (BallKind::Euclidean, [1.0, 1.0], perp, ShapeKind::Circle),
            (BallKind::Euclidean, [1.0, 1.0], skew, ShapeKind::Ellipse),
            (BallKind::Euclidean, [1.0, 2.0], perp, ShapeKind::Ellipse),
        ];
        for (kind, w, f, want) in cases {
            let s = BallSpec::new(f, w, Vec2::ZERO, 1.0, kind).unwrap();
            assert_eq!(classify_ball_shape(&s).unwrap().kind, want, "{kind:?} {w:?}");
        }
        let g = BallSpec::new(perp, [1.0, 1.0], Vec2::ZERO, 1.0, BallKind::General(3.0)).unwrap();
        assert!(matches!(classify_ball_shape(&g), Err(GeomError::UnsupportedExponent(_))));
    }

    #[test]
    fn measured_shape_agrees_with_tags() {
        for f in [Frame2::identity(), skew_frame()] {
            for w in [[1.0, 1.0], [1.0, 2.5]] {
                for kind in [BallKind::Taxicab, BallKind::Maximum] {
                    let s = BallSpec::new(f, w, Vec2::new(0.5, 0.5), 2.0, kind).unwrap();
                    let p = if kind == BallKind::Taxicab {
                        taxicab_circle(&s).unwrap()
                    } else {
                        maximum_circle(&s).unwrap()
                    };
                    assert_eq!(p.measured_shape(1e-9), p.shape);
                }
            }
        }
    }

    #[test]
    fn ball_spec_validation() {
        let f = Frame2::identity();
        assert!(BallSpec::new(f, [1.0, 1.0], Vec2::ZERO, 0.0, BallKind::Taxicab).is_err());
        assert!(BallSpec::new(f, [1.0, 0.0], Vec2::ZERO, 1.0, BallKind::Taxicab).is_err());
        assert!(BallSpec::new(f, [1.0, 1.0], Vec2::ZERO, 1.0, BallKind::General(-1.0)).is_err());
        assert!(BallSpec::new(f, [1.0, 1.0], Vec2::new(f64::NAN, 0.0), 1.0, BallKind::Taxicab).is_err());
    }

    #[test]
    fn frame2_angle_relations() {
        let f = skew_frame();
        assert!((f.cos_theta() - 8.0 / 260f64.sqrt()).abs() < 1e-15);
        assert!((f.theta().cos() - f.cos_theta()).abs() < 1e-15);
        assert!((f.theta().sin() - f.sin_theta()).abs() < 1e-15);
        assert!(Frame2::new(Vec2::new(3.0, -1.0), Vec2::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn line_intersection_unit_circle() {
        let c = ConicCoeffs { a: 1.0, b: 1.0, c: 0.0, d: 0.0, e: 0.0, f: -1.0 };
        let [t0, t1] = c.intersect_line(Vec2::ZERO, Vec2::new(1.0, 0.0)).unwrap();
        assert_eq!((t0, t1), (-1.0, 1.0));
        assert!(c.intersect_line(Vec2::new(0.0, 2.0), Vec2::new(1.0, 0.0)).is_none());
        let [t0, t1] = c.intersect_line(Vec2::new(0.0, 1.0), Vec2::new(1.0, 0.0)).unwrap();
        assert_eq!(t0, t1);
    }

    #[test]
    fn conic_classes() {
        let hyper = ConicCoeffs { a: 1.0, b: -1.0, c: 0.0, d: 0.0, e: 0.0, f: -1.0 };
        assert_eq!(hyper.classify(), ConicClass::Hyperbola);
        let imag = ConicCoeffs { a: 1.0, b: 1.0, c: 0.0, d: 0.0, e: 0.0, f: 1.0 };
        assert_eq!(imag.classify(), ConicClass::ImaginaryEllipse);
        let para = ConicCoeffs { a: 1.0, b: 0.0, c: 0.0, d: 0.0, e: -0.5, f: 0.0 };
        assert_eq!(para.classify(), ConicClass::Parabola);
        let lines = ConicCoeffs { a: 1.0, b: -1.0, c: 0.0, d: 0.0, e: 0.0, f: 0.0 };
        assert_eq!(lines.classify(), ConicClass::Degenerate);
    }
}
