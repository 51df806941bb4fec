//! Brute-force and Monte-Carlo checks of the claimed properties.
//!
//! The oracles evaluate [`MetricSpec::distance_coords`] and plain
//! arithmetic only. The constructions under test (vertices, ellipses,
//! conversions) enter as inputs, never as part of the check itself.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt;

use rand::RngExt;

use crate::conic::{
    ball_from_ellipse, conjugate_diameter_chords, eccentric_radius, eccentricity,
    eccentricity_from_angle, eccentrix_form_from_ellipse, ellipse_from_ball,
    ellipse_from_eccentrix_form, ellipse_from_weighted_ball, hyperbola_from_line_pair, AsymptoteSlopes, EllipseParams,
    LinePair,
};
use crate::error::{GeomError, Result};
use crate::metric::{Exponent, Frame, MetricSpec, Point};
use crate::planar::{
    classify_ball_shape, common_points, euclidean_circle_conic, maximum_circle, taxicab_circle,
    BallKind, BallSpec, Frame2, Parallelogram4, Polyline, ShapeKind,
};
use crate::sampling::{
    batch_rng, fill_box_point, random_frame, random_weights, sweep, sweep_range, SampleRng, Sweep,
    BATCH,
};
use crate::tol::{
    ALGEBRAIC_REL, BOUNDARY_REL, RATIO_REL, SHAPE_REL, TRIANGLE_REL, WITNESS_ABS,
};
use crate::vec2::{line_distance, Vec2};

/// Batches examined per round while searching for a triangle violation.
const SEARCH_ROUND_BATCHES: usize = 16;

/// The exponent schedule `1, 2, 4, …, 1024`.
pub fn doubling_schedule() -> Vec<f64> {
    (0..=10).map(|k| f64::from(1u32 << k)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    /// Points are drawn from `[-w, w]^n`.
    pub box_half_width: f64,
    pub dimension: usize,
    /// Evaluate batches on the rayon pool. Results do not depend on it.
    pub parallel: bool,
}

impl SampleConfig {
    pub fn new(seed: u64, count: usize, box_half_width: f64, dimension: usize) -> Result<Self> {
        if count == 0 {
            return Err(GeomError::InvalidParameter("count must be at least 1".into()));
        }
        if !(box_half_width.is_finite() && box_half_width > 0.0) {
            return Err(GeomError::NonPositive {
                name: "box half width",
                value: box_half_width,
            });
        }
        if dimension < 2 {
            return Err(GeomError::DimensionTooSmall(dimension));
        }
        Ok(Self {
            seed,
            count,
            box_half_width,
            dimension,
            parallel: true,
        })
    }

    pub fn with_dimension(self, dimension: usize) -> Self {
        Self { dimension, ..self }
    }

    pub fn with_count(self, count: usize) -> Self {
        Self { count, ..self }
    }

    pub fn sequential(self) -> Self {
        Self {
            parallel: false,
            ..self
        }
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            count: 10_000,
            box_half_width: 10.0,
            dimension: 2,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub name: String,
    pub trials: usize,
    pub max_violation: f64,
    pub tolerance: f64,
    /// Points of the lowest-index failing trial.
    pub witness: Option<Vec<Point>>,
    pub passed: bool,
}

impl PropertyReport {
    fn from_sweep(name: &str, s: Sweep, tolerance: f64) -> Self {
        let witness = s.witness.map(|(_, pts)| {
            pts.into_iter()
                .filter_map(|c| Point::new(c).ok())
                .collect::<Vec<_>>()
        });
        Self {
            name: name.to_string(),
            trials: s.trials,
            max_violation: s.max_violation,
            tolerance,
            passed: s.max_violation <= tolerance,
            witness,
        }
    }

    fn single(name: &str, trials: usize, violation: f64, tolerance: f64, witness: Vec<Point>) -> Self {
        let violation = if violation.is_nan() { f64::INFINITY } else { violation };
        let passed = violation <= tolerance;
        Self {
            name: name.to_string(),
            trials,
            max_violation: violation,
            tolerance,
            witness: (!passed).then_some(witness),
            passed,
        }
    }
}

impl fmt::Display for PropertyReport {
    /// `PROPERTY name PASS|FAIL max_violation=…`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PROPERTY {} {} max_violation={:.6e}",
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.max_violation
        )
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Make `scratch` hold `k` vectors of length `dim`.
fn slots(scratch: &mut Vec<Vec<f64>>, k: usize, dim: usize) {
    scratch.resize_with(k, Vec::new);
    for s in scratch.iter_mut() {
        s.resize(dim, 0.0);
    }
}

fn store2(scratch: &mut Vec<Vec<f64>>, pts: &[Vec2]) {
    slots(scratch, pts.len(), 2);
    for (s, p) in scratch.iter_mut().zip(pts) {
        s[0] = p.x;
        s[1] = p.y;
    }
}

fn check_dim(spec: &MetricSpec, cfg: &SampleConfig) -> Result<()> {
    if spec.dim() != cfg.dimension {
        return Err(GeomError::DimensionMismatch {
            expected: spec.dim(),
            found: cfg.dimension,
        });
    }
    Ok(())
}

/// Identity, positivity, symmetry and the triangle inequality on random
/// triples. A quarter of the triples put `z` on the segment `xy`, where
/// the triangle inequality is tight for `p = 1`.
pub fn check_metric_axioms(spec: &MetricSpec, cfg: &SampleConfig) -> Result<PropertyReport> {
    if !spec.is_metric() {
        return Err(GeomError::NotAMetric(spec.exponent().value()));
    }
    check_dim(spec, cfg)?;
    let n = cfg.dimension;
    let w = cfg.box_half_width;
    let s = sweep(cfg.seed, cfg.count, TRIANGLE_REL, cfg.parallel, |rng, i, scratch| {
        slots(scratch, 3, n);
        fill_box_point(rng, w, &mut scratch[0]);
        fill_box_point(rng, w, &mut scratch[1]);
        if i % 4 == 3 {
            let t: f64 = rng.random_range(0.0..=1.0);
            for k in 0..n {
                scratch[2][k] = scratch[0][k] + t * (scratch[1][k] - scratch[0][k]);
            }
        } else {
            fill_box_point(rng, w, &mut scratch[2]);
        }
        let (x, y, z) = (&scratch[0], &scratch[1], &scratch[2]);
        let d = |a: &[f64], b: &[f64]| spec.distance_coords(a, b);
        let (dxy, dyx, dxz, dzy, dzx, dyz) = (d(x, y), d(y, x), d(x, z), d(z, y), d(z, x), d(y, z));
        let scale = dxy.max(dxz).max(dzy).max(f64::MIN_POSITIVE);
        let mut v = d(x, x).max(d(y, y)).max(d(z, z)) / scale;
        if x != y && dxy <= 0.0 {
            v = v.max(1.0);
        }
        v = v.max((dxy - dyx).abs() / scale);
        v = v.max((dxz - dzx).abs() / scale);
        v = v.max((dzy - dyz).abs() / scale);
        v = v.max((dxy - dxz - dzy) / scale);
        v = v.max((dxz - dxy - dyz) / scale);
        v.max((dzy - dzx - dxy) / scale)
    });
    Ok(PropertyReport::from_sweep("metric_axioms", s, TRIANGLE_REL))
}

/// Search for `d(x, y) > d(x, z) + d(z, y) + 1e-9`. The triple
/// `x = 0, z = e1, y = e1 + e2` is tried first, then random triples (half
/// of them with `z` built from coordinates of `x` and `y`).
///
/// `passed` means no violation was found, which proves nothing for `p < 1`.
pub fn find_triangle_violation(spec: &MetricSpec, cfg: &SampleConfig) -> Result<PropertyReport> {
    check_search_input(spec, cfg)?;
    let n = cfg.dimension;
    let name = "triangle_inequality";

    let x = vec![0.0; n];
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    let mut y = z.clone();
    y[1] = 1.0;
    let excess = spec.distance_coords(&x, &y)
        - spec.distance_coords(&x, &z)
        - spec.distance_coords(&z, &y);
    if excess > WITNESS_ABS {
        let pts = [x, y, z].map(|c| Point::new(c).expect("finite seed triple"));
        return Ok(PropertyReport::single(name, 1, excess, WITNESS_ABS, pts.to_vec()));
    }
    let mut report = random_triangle_search(spec, cfg, cfg.count.saturating_sub(1))?;
    report.trials += 1;
    report.max_violation = report.max_violation.max(excess);
    Ok(report)
}

/// The random part of [`find_triangle_violation`] alone: up to
/// `cfg.count` random triples, half of them mixing coordinates of `x` and
/// `y` into `z`.
pub fn search_triangle_violation(spec: &MetricSpec, cfg: &SampleConfig) -> Result<PropertyReport> {
    check_search_input(spec, cfg)?;
    random_triangle_search(spec, cfg, cfg.count)
}

fn check_search_input(spec: &MetricSpec, cfg: &SampleConfig) -> Result<()> {
    match spec.exponent() {
        Exponent::Finite(p) if p < 1.0 => {}
        e => {
            return Err(GeomError::InvalidParameter(format!(
                "triangle violation search needs 0 < p < 1, got {e}"
            )))
        }
    }
    check_dim(spec, cfg)
}

fn random_triangle_search(spec: &MetricSpec, cfg: &SampleConfig, budget: usize) -> Result<PropertyReport> {
    let n = cfg.dimension;
    let w = cfg.box_half_width;
    let trial = |rng: &mut SampleRng, i: usize, scratch: &mut Vec<Vec<f64>>| {
        slots(scratch, 3, n);
        fill_box_point(rng, w, &mut scratch[0]);
        fill_box_point(rng, w, &mut scratch[1]);
        if i % 2 == 0 {
            for k in 0..n {
                let from_x: bool = rng.random();
                scratch[2][k] = if from_x { scratch[0][k] } else { scratch[1][k] };
            }
        } else {
            fill_box_point(rng, w, &mut scratch[2]);
        }
        let (x, y, z) = (&scratch[0], &scratch[1], &scratch[2]);
        spec.distance_coords(x, y) - spec.distance_coords(x, z) - spec.distance_coords(z, y)
    };

    let round = SEARCH_ROUND_BATCHES * BATCH;
    let mut total = Sweep {
        trials: 0,
        max_violation: 0.0,
        witness: None,
    };
    let mut done = 0;
    while done < budget && total.witness.is_none() {
        let upto = (done + round).min(budget);
        let s = sweep_range(cfg.seed, done, upto, WITNESS_ABS, cfg.parallel, &trial);
        total.trials += s.trials;
        total.max_violation = total.max_violation.max(s.max_violation);
        total.witness = s.witness;
        done = upto;
    }
    Ok(PropertyReport::from_sweep("triangle_inequality", total, WITNESS_ABS))
}

/// Sandwich `σ ≤ d_p ≤ σ n^(1/p)` along the schedule, monotone decrease of
/// `d_p − d_∞` (with `1e-12` slack), and `d_∞ = σ`. Violations are
/// relative to `σ`; the tolerance is `1e-12`.
pub fn check_p_limit(
    frame: &Frame,
    weights: &[f64],
    x: &Point,
    y: &Point,
    schedule: &[f64],
) -> Result<PropertyReport> {
    validate_schedule(schedule)?;
    let metric = MetricSpec::new(frame.clone(), weights.to_vec(), Exponent::Infinity)?;
    if x.dim() != metric.dim() || y.dim() != metric.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: metric.dim(),
            found: if x.dim() != metric.dim() { x.dim() } else { y.dim() },
        });
    }
    let v = p_limit_violation(&metric, x.coords(), y.coords(), schedule);
    Ok(PropertyReport::single(
        "p_limit",
        schedule.len(),
        v,
        ALGEBRAIC_REL,
        vec![x.clone(), y.clone()],
    ))
}

/// `d_p − d_∞` for each `p` of the schedule.
pub fn p_limit_residuals(metric: &MetricSpec, x: &[f64], y: &[f64], schedule: &[f64]) -> Vec<f64> {
    let d_inf = metric.with_exponent(Exponent::Infinity).distance_coords(x, y);
    schedule
        .iter()
        .map(|&p| metric.with_exponent(Exponent::Finite(p)).distance_coords(x, y) - d_inf)
        .collect()
}

fn validate_schedule(schedule: &[f64]) -> Result<()> {
    if schedule.is_empty() {
        return Err(GeomError::InvalidParameter("empty exponent schedule".into()));
    }
    if schedule.iter().any(|&p| !(p >= 1.0 && p.is_finite())) {
        return Err(GeomError::InvalidParameter(
            "schedule exponents must be finite and at least 1".into(),
        ));
    }
    if schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(GeomError::InvalidParameter("schedule must be increasing".into()));
    }
    Ok(())
}

fn p_limit_violation(metric: &MetricSpec, x: &[f64], y: &[f64], schedule: &[f64]) -> f64 {
    let sigma = metric.max_projection(x, y);
    let n = metric.dim() as f64;
    let d_inf = metric.with_exponent(Exponent::Infinity).distance_coords(x, y);
    if sigma == 0.0 {
        // x = y: every distance must vanish
        return p_limit_residuals(metric, x, y, schedule)
            .into_iter()
            .fold(d_inf, |m, r| m.max(r.abs()));
    }
    let mut v = (d_inf - sigma).abs() / sigma;
    let mut prev = f64::INFINITY;
    for &p in schedule {
        let d = metric.with_exponent(Exponent::Finite(p)).distance_coords(x, y);
        v = v.max((sigma - d) / sigma);
        v = v.max((d - sigma * n.powf(1.0 / p)) / sigma);
        let residual = d - d_inf;
        if prev.is_finite() {
            v = v.max((residual - prev) / sigma);
        }
        prev = residual;
    }
    v
}

/// A boundary representation to test against a ball.
#[derive(Debug, Clone, PartialEq)]
pub enum Boundary {
    /// Sampled curve; its vertices are tested (segments between them are
    /// chords, not boundary).
    Polyline(Polyline),
    /// Exact polygon; points are interpolated along the edges.
    Parallelogram(Parallelogram4),
    /// Exact ellipse; points are taken at random parameters.
    Ellipse(EllipseParams),
}

/// `|d(C, P) − r| ≤ 1e-9 r` for `samples` points of `boundary`.
pub fn check_ball_membership(
    spec: &BallSpec,
    boundary: &Boundary,
    samples: usize,
    seed: u64,
) -> PropertyReport {
    check_ball_membership_with_tolerance(spec, boundary, samples, seed, BOUNDARY_REL)
}

/// As [`check_ball_membership`] with a caller-chosen relative tolerance,
/// e.g. for coordinates that were rounded for output.
pub fn check_ball_membership_with_tolerance(
    spec: &BallSpec,
    boundary: &Boundary,
    samples: usize,
    seed: u64,
    rel_tol: f64,
) -> PropertyReport {
    let r = spec.radius();
    let s = sweep(seed, samples, rel_tol, true, |rng, i, scratch| {
        let p = match boundary {
            Boundary::Polyline(line) if line.points.is_empty() => return f64::INFINITY,
            Boundary::Polyline(line) => line.points[rng.random_range(0..line.points.len())],
            Boundary::Parallelogram(poly) => {
                let (a, b) = poly.edge(i % 4);
                let t: f64 = rng.random_range(0.0..=1.0);
                a + (b - a) * t
            }
            Boundary::Ellipse(e) => e.point_at(rng.random_range(0.0..std::f64::consts::TAU)),
        };
        store2(scratch, &[p]);
        (spec.distance_from_center(p) - r).abs() / r
    });
    PropertyReport::from_sweep("ball_membership", s, rel_tol)
}

/// Translation invariance (relative `1e-12`) and preservation of ratios of
/// collinear segments (relative `1e-10`).
pub fn check_invariance(spec: &MetricSpec, cfg: &SampleConfig) -> Result<Vec<PropertyReport>> {
    check_dim(spec, cfg)?;
    let n = cfg.dimension;
    let w = cfg.box_half_width;

    let translation = sweep(cfg.seed, cfg.count, ALGEBRAIC_REL, cfg.parallel, |rng, _, s| {
        slots(s, 5, n);
        for k in 0..3 {
            fill_box_point(rng, w, &mut s[k]);
        }
        for k in 0..n {
            s[3][k] = s[0][k] + s[2][k];
            s[4][k] = s[1][k] + s[2][k];
        }
        let before = spec.distance_coords(&s[0], &s[1]);
        let after = spec.distance_coords(&s[3], &s[4]);
        if before == 0.0 {
            after
        } else {
            rel(after, before)
        }
    });

    let ratio = sweep(cfg.seed ^ 0x5eed, cfg.count, RATIO_REL, cfg.parallel, |rng, _, s| {
        slots(s, 6, n);
        // s[0] base point, s[1] direction, s[2..6] the four points
        fill_box_point(rng, w, &mut s[0]);
        fill_box_point(rng, 1.0, &mut s[1]);
        let mut t = [0.0; 4];
        for pair in 0..2 {
            let a: f64 = rng.random_range(-w..=w);
            let len: f64 = rng.random_range(0.1..=w);
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            t[2 * pair] = a;
            t[2 * pair + 1] = a + sign * len;
        }
        for (j, tj) in t.iter().enumerate() {
            for k in 0..n {
                s[2 + j][k] = s[0][k] + tj * s[1][k];
            }
        }
        let euclid = |a: &[f64], b: &[f64]| {
            a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
        };
        let e_ratio = euclid(&s[2], &s[3]) / euclid(&s[4], &s[5]);
        let d_ratio = spec.distance_coords(&s[2], &s[3]) / spec.distance_coords(&s[4], &s[5]);
        rel(d_ratio, e_ratio)
    });

    Ok(vec![
        PropertyReport::from_sweep("translation_invariance", translation, ALGEBRAIC_REL),
        PropertyReport::from_sweep("collinear_ratio", ratio, RATIO_REL),
    ])
}

/// Circles are symmetric about their center: if `d(C, P) = r` then
/// `d(C, 2C − P) = r`.
pub fn check_center_symmetry(spec: &MetricSpec, cfg: &SampleConfig) -> Result<PropertyReport> {
    check_dim(spec, cfg)?;
    let n = cfg.dimension;
    let w = cfg.box_half_width;
    let s = sweep(cfg.seed ^ 0xc3, cfg.count, BOUNDARY_REL, cfg.parallel, |rng, _, s| {
        slots(s, 4, n);
        fill_box_point(rng, w, &mut s[0]);
        fill_box_point(rng, 1.0, &mut s[1]);
        let r: f64 = rng.random_range(0.1..=w);
        let norm = spec.norm_coords(&s[1]);
        if norm == 0.0 {
            return 0.0;
        }
        for k in 0..n {
            let off = s[1][k] * (r / norm);
            s[2][k] = s[0][k] + off;
            s[3][k] = 2.0 * s[0][k] - s[2][k];
        }
        let d1 = spec.distance_coords(&s[0], &s[2]);
        let d2 = spec.distance_coords(&s[0], &s[3]);
        (d1 - r).abs().max((d2 - r).abs()) / r
    });
    Ok(PropertyReport::from_sweep("center_symmetry", s, BOUNDARY_REL))
}

/// The p-limit sandwich over `cfg.count` random frames, weights and pairs
/// in `cfg.dimension` dimensions, using the doubling schedule.
pub fn p_limit_suite(cfg: &SampleConfig) -> PropertyReport {
    let schedule = doubling_schedule();
    let (n, w) = (cfg.dimension, cfg.box_half_width);
    let s = sweep(cfg.seed, cfg.count, ALGEBRAIC_REL, cfg.parallel, |rng, _, s| {
        let metric = random_metric(rng, n, Exponent::Infinity);
        slots(s, 2, n);
        fill_box_point(rng, w, &mut s[0]);
        fill_box_point(rng, w, &mut s[1]);
        p_limit_violation(&metric, &s[0], &s[1], &schedule)
    });
    PropertyReport::from_sweep("p_limit", s, ALGEBRAIC_REL)
}

/// The p-limit sandwich for one frame and weights over `cfg.count` random
/// pairs.
pub fn p_limit_for_metric(metric: &MetricSpec, cfg: &SampleConfig) -> Result<PropertyReport> {
    check_dim(metric, cfg)?;
    let schedule = doubling_schedule();
    let (n, w) = (cfg.dimension, cfg.box_half_width);
    let metric = metric.with_exponent(Exponent::Infinity);
    let s = sweep(cfg.seed, cfg.count, ALGEBRAIC_REL, cfg.parallel, |rng, _, s| {
        slots(s, 2, n);
        fill_box_point(rng, w, &mut s[0]);
        fill_box_point(rng, w, &mut s[1]);
        p_limit_violation(&metric, &s[0], &s[1], &schedule)
    });
    Ok(PropertyReport::from_sweep("p_limit", s, ALGEBRAIC_REL))
}

/// Random frame with weights in `[0.1, 10]`.
pub fn random_metric(rng: &mut SampleRng, dim: usize, exponent: Exponent) -> MetricSpec {
    let frame = random_frame(rng, dim);
    let weights = random_weights(rng, dim, 0.1, 10.0);
    MetricSpec::new(frame, weights, exponent).expect("sampled metric is valid")
}

/// Random planar ball: frame with `|τ| ≥ 1e-3`, weights in `[0.1, 10]`,
/// center in the box, radius in `[0.1, 10]`.
pub fn random_ball(rng: &mut SampleRng, w: f64, kind: BallKind, unit_weights: bool) -> BallSpec {
    let frame = Frame2::from_frame(&random_frame(rng, 2)).expect("planar frame");
    let weights = if unit_weights {
        [1.0, 1.0]
    } else {
        let v = random_weights(rng, 2, 0.1, 10.0);
        [v[0], v[1]]
    };
    let center = Vec2::new(rng.random_range(-w..=w), rng.random_range(-w..=w));
    let radius = random_weights(rng, 1, 0.1, 10.0)[0];
    BallSpec::new(frame, weights, center, radius, kind).expect("sampled ball is valid")
}

/// Random ellipse with `a ∈ [0.1, 10]`, `b/a ∈ [0.05, 1]`.
pub fn random_ellipse(rng: &mut SampleRng, w: f64) -> EllipseParams {
    let a = random_weights(rng, 1, 0.1, 10.0)[0];
    let ratio: f64 = rng.random_range(0.05..=1.0);
    let center = Vec2::new(rng.random_range(-w..=w), rng.random_range(-w..=w));
    let angle: f64 = rng.random_range(0.0..PI);
    EllipseParams::new(center, a, a * ratio, angle).expect("sampled ellipse is valid")
}

fn membership(spec: &BallSpec, points: &[Vec2]) -> f64 {
    let r = spec.radius();
    points
        .iter()
        .map(|&p| (spec.distance_from_center(p) - r).abs() / r)
        .fold(0.0, f64::max)
}

/// Points per random ball taken from each edge or from the ellipse.
const POINTS_PER_BALL: usize = 4;

/// Planar circle constructions against the metric on random specs, plus
/// the shape case tables on constructed instances.
pub fn ball_suite(cfg: &SampleConfig) -> Vec<PropertyReport> {
    let w = cfg.box_half_width;
    let run = |name: &str, salt: u64, f: &(dyn Fn(&mut SampleRng, &mut Vec<Vec<f64>>) -> f64 + Sync)| {
        let s = sweep(cfg.seed ^ salt, cfg.count, BOUNDARY_REL, cfg.parallel, |rng, _, s| f(rng, s));
        PropertyReport::from_sweep(name, s, BOUNDARY_REL)
    };

    let mut out = vec![
        run("taxicab_vertices", 1, &|rng, s| {
            let spec = random_ball(rng, w, BallKind::Taxicab, false);
            let poly = taxicab_circle(&spec).expect("taxicab spec");
            store2(s, &poly.vertices);
            membership(&spec, &poly.vertices)
        }),
        run("taxicab_edges", 2, &|rng, s| {
            let spec = random_ball(rng, w, BallKind::Taxicab, false);
            let poly = taxicab_circle(&spec).expect("taxicab spec");
            let pts = edge_points(rng, &poly);
            store2(s, &pts);
            membership(&spec, &pts)
        }),
        run("maximum_vertices", 3, &|rng, s| {
            let spec = random_ball(rng, w, BallKind::Maximum, false);
            let poly = maximum_circle(&spec).expect("maximum spec");
            store2(s, &poly.vertices);
            membership(&spec, &poly.vertices)
        }),
        run("maximum_edges", 4, &|rng, s| {
            let spec = random_ball(rng, w, BallKind::Maximum, false);
            let poly = maximum_circle(&spec).expect("maximum spec");
            let pts = edge_points(rng, &poly);
            store2(s, &pts);
            membership(&spec, &pts)
        }),
        run("ellipse_points", 5, &|rng, s| {
            let spec = random_ball(rng, w, BallKind::Euclidean, false);
            let e = ellipse_from_weighted_ball(&spec).expect("euclidean spec");
            let pts = ellipse_points(rng, &e);
            store2(s, &pts);
            membership(&spec, &pts)
        }),
        run("unit_weight_ellipse_points", 6, &|rng, s| {
            let spec = random_ball(rng, w, BallKind::Euclidean, true);
            let e = ellipse_from_ball(spec.frame(), spec.center(), spec.radius())
                .expect("valid ball");
            let pts = ellipse_points(rng, &e);
            store2(s, &pts);
            membership(&spec, &pts)
        }),
        run("common_points", 7, &|rng, s| {
            let spec = random_ball(rng, w, BallKind::Euclidean, false);
            let q = common_points(&spec).expect("independent frame");
            store2(s, &q);
            let (c, r) = (spec.center(), spec.radius());
            let f = spec.frame();
            let mut v: f64 = 0.0;
            for (i, p) in q.iter().enumerate() {
                let normal = if i % 2 == 0 { f.v1() } else { f.v2() };
                v = v.max(line_distance(*p, c, normal) / r);
            }
            // p < 1 is left out: t^p is not Lipschitz at 0, so the rounding
            // residue of the projection that should vanish is amplified
            for kind in [
                BallKind::Taxicab,
                BallKind::General(1.5),
                BallKind::Euclidean,
                BallKind::General(5.0),
                BallKind::Maximum,
            ] {
                v = v.max(membership(&spec.with_kind(kind).expect("valid kind"), &q));
            }
            v
        }),
    ];
    out.push(shape_table_report(cfg));
    let sym_cfg = cfg.with_dimension(2);
    let mut rng = batch_rng(cfg.seed ^ 0x5a, u64::MAX);
    for kind in [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity] {
        let metric = random_metric(&mut rng, 2, kind);
        let mut r = check_center_symmetry(&metric, &sym_cfg).expect("planar metric");
        r.name = format!("center_symmetry_p{}", kind);
        out.push(r);
    }
    out
}

fn edge_points(rng: &mut SampleRng, poly: &Parallelogram4) -> Vec<Vec2> {
    (0..4)
        .map(|i| {
            let (a, b) = poly.edge(i);
            let t: f64 = rng.random_range(0.0..=1.0);
            a + (b - a) * t
        })
        .collect()
}

fn ellipse_points(rng: &mut SampleRng, e: &EllipseParams) -> Vec<Vec2> {
    (0..POINTS_PER_BALL)
        .map(|_| e.point_at(rng.random_range(0.0..std::f64::consts::TAU)))
        .collect()
}

/// Expected shape by exponent, weight equality and frame orthogonality.
fn expected_shape(kind: BallKind, equal: bool, orthogonal: bool) -> ShapeKind {
    use ShapeKind::*;
    match kind {
        BallKind::Euclidean if equal && orthogonal => Circle,
        BallKind::Euclidean => Ellipse,
        // taxicab diagonals lie on l1 and l2; maximum sides run along them
        BallKind::Taxicab => match (equal, orthogonal) {
            (true, true) => Square,
            (true, false) => Rectangle,
            (false, true) => Rhombus,
            (false, false) => Parallelogram,
        },
        _ => match (equal, orthogonal) {
            (true, true) => Square,
            (true, false) => Rhombus,
            (false, true) => Rectangle,
            (false, false) => Parallelogram,
        },
    }
}

/// Shape tags and measured shapes on constructed orthogonal and
/// equal-weight instances. Violation = number of mismatches.
pub fn shape_table_report(cfg: &SampleConfig) -> PropertyReport {
    let mut rng = batch_rng(cfg.seed ^ 0x7ab1e, 0);
    let per_case = (cfg.count / 12).clamp(1, 50);
    let mut mismatches = 0usize;
    let mut trials = 0usize;
    let mut witness = Vec::new();
    for kind in [BallKind::Taxicab, BallKind::Euclidean, BallKind::Maximum] {
        for equal in [true, false] {
            for orthogonal in [true, false] {
                for _ in 0..per_case {
                    trials += 1;
                    let phi: f64 = rng.random_range(0.0..PI);
                    let gap = if orthogonal {
                        FRAC_PI_2
                    } else {
                        let g: f64 = rng.random_range(0.2..FRAC_PI_2 - 0.2);
                        if rng.random::<bool>() { g } else { PI - g }
                    };
                    let frame = Frame2::new(Vec2::from_angle(phi), Vec2::from_angle(phi + gap))
                        .expect("unit vectors");
                    let l1 = random_weights(&mut rng, 1, 0.1, 10.0)[0];
                    let l2 = if equal { l1 } else { l1 * rng.random_range(1.5..3.0) };
                    let center = Vec2::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
                    let spec = BallSpec::new(frame, [l1, l2], center, rng.random_range(0.5..5.0), kind)
                        .expect("constructed ball");
                    let want = expected_shape(kind, equal, orthogonal);
                    let tagged = classify_ball_shape(&spec).expect("supported kind").kind;
                    let measured = match kind {
                        BallKind::Taxicab => taxicab_circle(&spec).map(|p| p.measured_shape(1e-9)),
                        BallKind::Maximum => maximum_circle(&spec).map(|p| p.measured_shape(1e-9)),
                        _ => euclidean_circle_conic(&spec).map(|q| {
                            match EllipseParams::from_conic(&q) {
                                Some(e) if e.a() - e.b() <= SHAPE_REL * e.a() => ShapeKind::Circle,
                                _ => ShapeKind::Ellipse,
                            }
                        }),
                    }
                    .expect("constructed ball");
                    if tagged != want || measured != want {
                        mismatches += 1;
                        if witness.is_empty() {
                            witness = vec![Point::from(frame.v1()), Point::from(frame.v2())];
                        }
                    }
                }
            }
        }
    }
    PropertyReport::single("shape_tables", trials, mismatches as f64, 0.0, witness)
}

/// Ellipse and hyperbola relations and round trips on random inputs.
pub fn conic_suite(cfg: &SampleConfig) -> Vec<PropertyReport> {
    let w = cfg.box_half_width;
    let run = |name: &str, salt: u64, tol: f64, f: &(dyn Fn(&mut SampleRng, &mut Vec<Vec<f64>>) -> f64 + Sync)| {
        let s = sweep(cfg.seed ^ salt, cfg.count, tol, cfg.parallel, |rng, _, s| f(rng, s));
        PropertyReport::from_sweep(name, s, tol)
    };
    let ball = |rng: &mut SampleRng, s: &mut Vec<Vec<f64>>| {
        let spec = random_ball(rng, w, BallKind::Euclidean, true);
        let f = spec.frame();
        store2(s, &[f.v1(), f.v2(), spec.center()]);
        let e = ellipse_from_ball(f, spec.center(), spec.radius()).expect("valid ball");
        (spec, e)
    };

    vec![
        run("harmonic_mean_radius", 1, RATIO_REL, &|rng, s| {
            let (spec, e) = ball(rng, s);
            let (a2, b2, r) = (e.a() * e.a(), e.b() * e.b(), spec.radius());
            rel(r * r, 2.0 * a2 * b2 / (a2 + b2))
        }),
        run("radius_between_axes", 2, RATIO_REL, &|rng, s| {
            let (spec, e) = ball(rng, s);
            let r = spec.radius();
            ((e.b() - r) / r).max((r - e.a()) / r).max(0.0)
        }),
        run("half_angle_tangent", 3, RATIO_REL, &|rng, s| {
            let (spec, e) = ball(rng, s);
            rel((0.5 * spec.frame().theta()).tan(), e.b() / e.a())
        }),
        run("eccentric_radius", 4, RATIO_REL, &|rng, s| {
            let e = random_ellipse(rng, w);
            store2(s, &[e.center(), Vec2::new(e.a(), e.b())]);
            let big_r = eccentric_radius(&e);
            let (_, r) = ball_from_ellipse(&e);
            let Ok([c1, c2]) = conjugate_diameter_chords(&e) else {
                return f64::INFINITY;
            };
            let half = |c: &crate::conic::Chord| c.length() / 2.0;
            rel(big_r, e.a().hypot(e.b()) / SQRT_2)
                .max(rel(half(&c1), big_r))
                .max(rel(half(&c2), big_r))
                .max(rel(big_r * r, e.a() * e.b()))
        }),
        run("eccentricity_agreement", 5, RATIO_REL, &|rng, s| {
            let (spec, e) = ball(rng, s);
            (eccentricity(&e) - eccentricity_from_angle(spec.frame().theta())).abs()
        }),
        run("apollonius_square_sum", 6, RATIO_REL, &|rng, s| {
            let e = random_ellipse(rng, w);
            store2(s, &[e.center(), Vec2::new(e.a(), e.b())]);
            let Ok([c1, c2]) = conjugate_diameter_chords(&e) else {
                return f64::INFINITY;
            };
            let (s1, s2) = (c1.end - e.center(), c2.end - e.center());
            rel(s1.dot(s1) + s2.dot(s2), e.a() * e.a() + e.b() * e.b())
        }),
        run("apollonius_area", 7, RATIO_REL, &|rng, s| {
            let e = random_ellipse(rng, w);
            store2(s, &[e.center(), Vec2::new(e.a(), e.b())]);
            let Ok([c1, c2]) = conjugate_diameter_chords(&e) else {
                return f64::INFINITY;
            };
            let (s1, s2) = (c1.end - e.center(), c2.end - e.center());
            rel(s1.cross(s2).abs(), e.a() * e.b())
        }),
        run("ellipse_to_ball_membership", 8, BOUNDARY_REL, &|rng, s| {
            let e = random_ellipse(rng, w);
            let (frame, r) = ball_from_ellipse(&e);
            let spec = BallSpec::unit_weights(frame, e.center(), r, BallKind::Euclidean)
                .expect("converted ball");
            let pts = ellipse_points(rng, &e);
            store2(s, &pts);
            membership(&spec, &pts)
        }),
        run("frame_ellipse_frame", 9, BOUNDARY_REL, &|rng, s| {
            let (spec, e) = ball(rng, s);
            let (frame, r) = ball_from_ellipse(&e);
            let f = spec.frame();
            let par = |a: Vec2, b: Vec2| a.cross(b).abs();
            let same = par(frame.v1(), f.v1()).max(par(frame.v2(), f.v2()));
            let swapped = par(frame.v1(), f.v2()).max(par(frame.v2(), f.v1()));
            rel(r, spec.radius()).max(same.min(swapped))
        }),
        run("ellipse_eccentrix_ellipse", 10, BOUNDARY_REL, &|rng, s| {
            let e = random_ellipse(rng, w);
            store2(s, &[e.center(), Vec2::new(e.a(), e.b())]);
            let back = ellipse_from_eccentrix_form(&eccentrix_form_from_ellipse(&e));
            let d = (back.angle() - e.angle()).rem_euclid(PI);
            let angle_err = if e.is_circle() { 0.0 } else { d.min(PI - d) };
            rel(back.a(), e.a())
                .max(rel(back.b(), e.b()))
                .max((back.center() - e.center()).norm() / e.a())
                .max(angle_err)
        }),
        run("hyperbola_discriminant", 11, 0.0, &|rng, s| {
            let (lines, k) = random_line_pair(rng, w);
            store2(s, &[lines.point(), lines.dir1(), lines.dir2()]);
            let h = hyperbola_from_line_pair(&lines, k).expect("nonzero k");
            if h.conic.delta() < 0.0 {
                0.0
            } else {
                1.0 + h.conic.delta()
            }
        }),
        run("asymptote_slope_product", 12, RATIO_REL, &|rng, s| {
            let (lines, k) = random_line_pair(rng, w);
            store2(s, &[lines.point(), lines.dir1(), lines.dir2()]);
            let h = hyperbola_from_line_pair(&lines, k).expect("nonzero k");
            match h.slopes {
                AsymptoteSlopes::Slopes(m1, m2) => (m1 * m2 + 1.0).abs(),
                AsymptoteSlopes::AxisAligned => h
                    .asymptotes
                    .iter()
                    .map(|d| d.x.abs().min(d.y.abs()))
                    .fold(0.0, f64::max),
            }
        }),
        run("asymptote_directions", 13, RATIO_REL, &|rng, s| {
            let (lines, k) = random_line_pair(rng, w);
            store2(s, &[lines.point(), lines.dir1(), lines.dir2()]);
            let h = hyperbola_from_line_pair(&lines, k).expect("nonzero k");
            // far along an asymptote the two squared distances agree
            h.asymptotes
                .iter()
                .map(|&d| {
                    let (d1, d2) = lines.distances(lines.point() + d);
                    (d1 * d1 - d2 * d2).abs()
                })
                .fold(0.0, f64::max)
        }),
    ]
}

fn random_line_pair(rng: &mut SampleRng, w: f64) -> (LinePair, f64) {
    let frame = Frame2::from_frame(&random_frame(rng, 2)).expect("planar frame");
    let point = Vec2::new(rng.random_range(-w..=w), rng.random_range(-w..=w));
    let k: f64 = rng.random_range(0.1..=w);
    let k = if rng.random::<bool>() { k } else { -k };
    (LinePair::from_normals(point, &frame), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(p: Exponent) -> MetricSpec {
        MetricSpec::unweighted(Frame::identity(2), p)
    }

    fn skew(p: Exponent) -> MetricSpec {
        let frame = crate::metric::validate_frame(vec![vec![3.0, -1.0], vec![-1.0, 5.0]], true).unwrap();
        MetricSpec::unweighted(frame, p)
    }

    fn cfg(count: usize) -> SampleConfig {
        SampleConfig::new(42, count, 10.0, 2).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(SampleConfig::new(0, 0, 1.0, 2).is_err());
        assert!(SampleConfig::new(0, 1, 0.0, 2).is_err());
        assert!(SampleConfig::new(0, 1, 1.0, 1).is_err());
    }

    #[test]
    fn axioms_pass_for_metrics() {
        for p in [Exponent::Finite(2.0), Exponent::Finite(1.0), Exponent::Infinity] {
            let r = check_metric_axioms(&skew(p), &cfg(20_000)).unwrap();
            assert!(r.passed, "{r}");
            assert!(r.witness.is_none());
            assert_eq!(r.trials, 20_000);
        }
        let r = check_metric_axioms(&identity(Exponent::Finite(2.0)), &cfg(20_000)).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn axioms_reject_non_metric() {
        let e = check_metric_axioms(&identity(Exponent::Finite(0.5)), &cfg(10));
        assert_eq!(e, Err(GeomError::NotAMetric(0.5)));
    }

    #[test]
    fn seeded_witness_for_half() {
        let r = find_triangle_violation(&identity(Exponent::Finite(0.5)), &cfg(1000)).unwrap();
        assert!(!r.passed);
        assert_eq!(r.trials, 1);
        assert!((r.max_violation - 2.0).abs() < 1e-12);
        let w = r.witness.unwrap();
        assert_eq!(w[1].coords(), &[1.0, 1.0]);
    }

    #[test]
    fn witness_search_rejects_metric_exponents() {
        assert!(find_triangle_violation(&identity(Exponent::Finite(1.0)), &cfg(10)).is_err());
        assert!(find_triangle_violation(&identity(Exponent::Infinity), &cfg(10)).is_err());
    }

    /// Exhaustive search on a small integer grid, used as an oracle for the
    /// existence of violations close to `p = 1`.
    fn grid_has_violation(m: &MetricSpec) -> bool {
        let pts: Vec<[f64; 2]> = (-2..=2)
            .flat_map(|i| (-2..=2).map(move |j| [i as f64, j as f64]))
            .collect();
        pts.iter().any(|x| {
            pts.iter().any(|y| {
                pts.iter().any(|z| {
                    m.distance_coords(x, y) > m.distance_coords(x, z) + m.distance_coords(z, y) + 1e-9
                })
            })
        })
    }

    #[test]
    fn witness_near_one() {
        let m = identity(Exponent::Finite(0.99));
        assert!(grid_has_violation(&m));
        let r = find_triangle_violation(&m, &cfg(1_000_000)).unwrap();
        assert!(!r.passed, "{r}");
        assert!(r.trials <= 1_000_000);
        let w = r.witness.unwrap();
        let (x, y, z) = (w[0].coords(), w[1].coords(), w[2].coords());
        assert!(m.distance_coords(x, y) > m.distance_coords(x, z) + m.distance_coords(z, y) + 1e-9);
    }

    #[test]
    fn random_only_search_finds_witnesses() {
        for p in [0.3, 0.5, 0.8] {
            let m = identity(Exponent::Finite(p));
            let r = search_triangle_violation(&m, &cfg(1_000_000)).unwrap();
            assert!(!r.passed && r.trials <= 1_000_000, "{r}");
            let w = r.witness.unwrap();
            // not the seeded triple
            assert_ne!(w[0].coords(), &[0.0, 0.0]);
            let (x, y, z) = (w[0].coords(), w[1].coords(), w[2].coords());
            assert!(m.distance_coords(x, y) > m.distance_coords(x, z) + m.distance_coords(z, y) + 1e-9);
        }
        assert!(search_triangle_violation(&identity(Exponent::Finite(2.0)), &cfg(10)).is_err());
    }

    #[test]
    fn random_search_finds_witness_off_identity() {
        let r = find_triangle_violation(&skew(Exponent::Finite(0.8)), &cfg(1_000_000)).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn p_limit_examples() {
        let sched = doubling_schedule();
        let x = Point::new(vec![0.0, 0.0]).unwrap();
        let r = check_p_limit(&Frame::identity(2), &[1.0, 1.0], &x, &x, &sched).unwrap();
        assert!(r.passed && r.max_violation == 0.0);

        let y = Point::new(vec![1.0, 1.0]).unwrap();
        let r = check_p_limit(&Frame::identity(2), &[1.0, 1.0], &x, &y, &sched).unwrap();
        assert!(r.passed, "{r}");
        let m = identity(Exponent::Infinity);
        let res = p_limit_residuals(&m, x.coords(), y.coords(), &sched);
        let last = *res.last().unwrap();
        assert!(last <= 2f64.powf(1.0 / 1024.0) - 1.0 + 1e-15);
        assert!((last - 6.771_306_930_663_57e-4).abs() < 1e-15);

        let f = skew(Exponent::Infinity);
        let y = Point::new(vec![2.5, -7.0]).unwrap();
        let r = check_p_limit(f.frame(), f.weights(), &x, &y, &sched).unwrap();
        assert!(r.passed, "{r}");

        assert!(check_p_limit(&Frame::identity(2), &[1.0, 1.0], &x, &y, &[2.0, 1.0]).is_err());
        assert!(check_p_limit(&Frame::identity(2), &[1.0, 1.0], &x, &y, &[0.5, 1.0]).is_err());
    }

    #[test]
    fn membership_examples() {
        let square = BallSpec::unit_weights(Frame2::identity(), Vec2::ZERO, 1.0, BallKind::Taxicab).unwrap();
        let poly = taxicab_circle(&square).unwrap();
        let r = check_ball_membership(&square, &Boundary::Parallelogram(poly), 1000, 1);
        assert!(r.passed && r.max_violation < 1e-12, "{r}");

        let frame = Frame2::normalized(Vec2::new(3.0, -1.0), Vec2::new(-1.0, 5.0)).unwrap();
        let spec = BallSpec::unit_weights(frame, Vec2::new(1.0, 2.0), 2.0, BallKind::Euclidean).unwrap();
        let e = ellipse_from_ball(&frame, spec.center(), 2.0).unwrap();
        let r = check_ball_membership(&spec, &Boundary::Ellipse(e), 1000, 2);
        assert!(r.passed, "{r}");

        let bad = EllipseParams::new(e.center(), e.a() * 1.001, e.b(), e.angle()).unwrap();
        let r = check_ball_membership(&spec, &Boundary::Ellipse(bad), 1000, 2);
        assert!(!r.passed);
        assert!(r.max_violation > 5e-4 && r.max_violation < 1.5e-3, "{r}");
        assert!(r.witness.is_some());

        let line = crate::planar::ball_boundary_points(&spec, 64).unwrap();
        assert!(check_ball_membership(&spec, &Boundary::Polyline(line), 200, 3).passed);
    }

    #[test]
    fn invariance_examples() {
        let reports = check_invariance(&skew(Exponent::Finite(1.5)), &cfg(10_000)).unwrap();
        for r in &reports {
            assert!(r.passed, "{r}");
        }
        let m = skew(Exponent::Finite(3.0));
        let (x, y) = ([1.0, 2.0], [-3.0, 0.5]);
        assert_eq!(m.distance_coords(&x, &y), m.distance_coords(&[1.0 + 0.0, 2.0 + 0.0], &[-3.0, 0.5]));
    }

    #[test]
    fn center_symmetry_in_two_and_three_dimensions() {
        for n in [2, 3] {
            let mut rng = batch_rng(9, n as u64);
            for p in [Exponent::Finite(1.0), Exponent::Finite(2.5), Exponent::Infinity] {
                let m = random_metric(&mut rng, n, p);
                let r = check_center_symmetry(&m, &cfg(5000).with_dimension(n)).unwrap();
                assert!(r.passed, "{r}");
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let m = skew(Exponent::Finite(1.0));
        let a = check_metric_axioms(&m, &cfg(5000)).unwrap();
        let b = check_metric_axioms(&m, &cfg(5000)).unwrap();
        let c = check_metric_axioms(&m, &cfg(5000).sequential()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let m = identity(Exponent::Finite(0.99));
        let a = find_triangle_violation(&m, &cfg(200_000)).unwrap();
        let b = find_triangle_violation(&m, &cfg(200_000).sequential()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sweep_range_matches_full_sweep() {
        let t = |rng: &mut SampleRng, _: usize, _: &mut Vec<Vec<f64>>| rng.random::<f64>();
        let full = sweep(5, 3000, 2.0, false, t);
        let a = sweep_range(5, 0, 2048, 2.0, false, &t);
        let b = sweep_range(5, 2048, 3000, 2.0, false, &t);
        assert_eq!(full.max_violation, a.max_violation.max(b.max_violation));
    }

    #[test]
    fn suites_pass() {
        let c = cfg(500);
        for r in ball_suite(&c).into_iter().chain(conic_suite(&c)) {
            assert!(r.passed, "{r} {:?}", r.witness);
        }
        for n in [2, 3, 5] {
            let r = p_limit_suite(&c.with_dimension(n));
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn shape_tables_match() {
        let r = shape_table_report(&cfg(600));
        assert!(r.passed, "{r}");
        assert_eq!(r.trials, 12 * 50);
    }

    #[test]
    fn report_line_format() {
        let r = PropertyReport::single("x", 1, 0.0, 1e-9, vec![]);
        assert_eq!(r.to_string(), "PROPERTY x PASS max_violation=0.000000e0");
        assert!(r.witness.is_none());
    }
}
