//! SVG and CSV output for planar balls.
//!
//! SVG coordinates are rounded to 6 decimals and CSV fields use the
//! shortest decimal that reads back as the same `f64`, so golden files are
//! stable across runs.
//!
//! Plain rounding can move a vertex off the circle by more than `1e-6 r`
//! where the distance has a steep gradient (exponents below 1, small
//! radii). Polygon and polyline vertices therefore go to the nearby grid
//! point that lies best on the circle, see [`snap_to_grid`].

use std::fmt::Write as _;

use geomink::{
    ball_boundary_points, common_points, ellipse_from_weighted_ball, maximum_circle,
    taxicab_circle, BallKind, BallSpec, EllipseParams, Vec2,
};

use crate::numfmt::{fixed6, shortest};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    pub width: u32,
    pub height: u32,
    /// Fraction of the bounding box added on every side.
    pub margin: f64,
    pub stroke_width: f64,
    /// Cycled over the p values in order.
    pub colors: Vec<String>,
    pub draw_lines: bool,
    pub draw_q_points: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        Self {
            width: 800,
            height: 800,
            margin: 0.1,
            stroke_width: 1.5,
            colors: ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
                .map(String::from)
                .to_vec(),
            draw_lines: false,
            draw_q_points: false,
        }
    }
}

impl RenderStyle {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.width == 0 || self.height == 0 {
            return Err(CliError::Input("width and height must be positive".into()));
        }
        if !(self.margin.is_finite() && self.margin >= 0.0) {
            return Err(CliError::Input("margin must be non-negative".into()));
        }
        if !(self.stroke_width.is_finite() && self.stroke_width > 0.0) {
            return Err(CliError::Input("stroke width must be positive".into()));
        }
        if self.colors.is_empty() {
            return Err(CliError::Input("at least one color is needed".into()));
        }
        Ok(())
    }
}

/// The geometry drawn for one ball.
#[derive(Debug, Clone, PartialEq)]
pub enum Curve {
    /// Exact vertices for `p = 1` and `p = ∞`.
    Polygon([Vec2; 4]),
    /// Exact ellipse for `p = 2`.
    Ellipse(EllipseParams),
    /// Sampled boundary for every other `p`.
    Polyline(Vec<Vec2>),
}

/// Grid spacing of SVG coordinates.
pub const GRID: f64 = 1e-6;

/// Half-widths of the squares of grid points searched around a vertex,
/// tried in order until one holds a point within `SNAP_TARGET`.
const SNAP_REACH: [i64; 4] = [4, 16, 64, 256];

/// Relative boundary error a snapped vertex aims for: half the `1e-6`
/// membership tolerance.
const SNAP_TARGET: f64 = 5e-7;

/// The 6-decimal grid point to print for the boundary point `p`.
///
/// Among the grid points within `SNAP_REACH` steps of the rounded point,
/// widening the search only when needed,
/// the nearest to `p` whose relative boundary error is at most
/// `SNAP_TARGET` wins; if there is none, the one with the smallest error.
/// The result always equals the value parsed back from its 6-decimal text.
pub fn snap_to_grid(spec: &BallSpec, p: Vec2) -> Vec2 {
    let r = spec.radius();
    let (gx, gy) = ((p.x / GRID).round(), (p.y / GRID).round());
    let mut best_err = (f64::INFINITY, Vec2::new(gx / 1e6, gy / 1e6));
    for reach in SNAP_REACH {
        let mut best_in: Option<(f64, Vec2)> = None;
        for i in -reach..=reach {
            for j in -reach..=reach {
                // integer over 1e6 rounds exactly like parsing the decimal text
                let q = Vec2::new((gx + i as f64) / 1e6, (gy + j as f64) / 1e6);
                let err = (spec.distance_from_center(q) - r).abs() / r;
                let far = q.distance(p);
                if err <= SNAP_TARGET && best_in.map_or(true, |(d, _)| far < d) {
                    best_in = Some((far, q));
                }
                if err < best_err.0 {
                    best_err = (err, q);
                }
            }
        }
        if let Some((_, q)) = best_in {
            return q;
        }
    }
    best_err.1
}

pub fn ball_curve(spec: &BallSpec, samples: usize) -> Result<Curve, CliError> {
    Ok(match spec.kind() {
        BallKind::Taxicab => Curve::Polygon(taxicab_circle(spec)?.vertices),
        BallKind::Maximum => Curve::Polygon(maximum_circle(spec)?.vertices),
        BallKind::Euclidean => Curve::Ellipse(ellipse_from_weighted_ball(spec)?),
        BallKind::General(_) => Curve::Polyline(ball_boundary_points(spec, samples)?.points),
    })
}

#[derive(Debug, Clone, Copy)]
struct Bbox {
    min: Vec2,
    max: Vec2,
}

impl Bbox {
    fn empty() -> Self {
        Self {
            min: Vec2::new(f64::INFINITY, f64::INFINITY),
            max: Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn add(&mut self, p: Vec2) {
        self.min = Vec2::new(self.min.x.min(p.x), self.min.y.min(p.y));
        self.max = Vec2::new(self.max.x.max(p.x), self.max.y.max(p.y));
    }

    fn add_curve(&mut self, curve: &Curve) {
        match curve {
            Curve::Polygon(v) => v.iter().for_each(|&p| self.add(p)),
            Curve::Polyline(v) => v.iter().for_each(|&p| self.add(p)),
            Curve::Ellipse(e) => {
                let (s, c) = e.angle().sin_cos();
                let (a, b) = (e.a(), e.b());
                let half = Vec2::new((a * a * c * c + b * b * s * s).sqrt(), (a * a * s * s + b * b * c * c).sqrt());
                self.add(e.center() + half);
                self.add(e.center() - half);
            }
        }
    }
}

fn pt(p: Vec2) -> String {
    format!("{} {}", fixed6(p.x), fixed6(p.y))
}

fn path_data(curve: &Curve) -> String {
    match curve {
        Curve::Polygon(v) => {
            format!("M {} L {} L {} L {} Z", pt(v[0]), pt(v[1]), pt(v[2]), pt(v[3]))
        }
        Curve::Polyline(v) => {
            let mut d = format!("M {}", pt(v[0]));
            for &p in &v[1..] {
                let _ = write!(d, " L {}", pt(p));
            }
            d.push_str(" Z");
            d
        }
        Curve::Ellipse(e) => {
            // two half arcs between the ends of the major axis
            let arc = format!("A {} {} {} 0 1", fixed6(e.a()), fixed6(e.b()), fixed6(e.angle().to_degrees()));
            let (p0, p1) = (e.point_at(0.0), e.point_at(std::f64::consts::PI));
            format!("M {} {arc} {} {arc} {} Z", pt(p0), pt(p1), pt(p0))
        }
    }
}

fn p_label(spec: &BallSpec) -> String {
    match spec.kind() {
        BallKind::Taxicab => "1".into(),
        BallKind::Euclidean => "2".into(),
        BallKind::Maximum => "inf".into(),
        BallKind::General(p) => shortest(p),
    }
}

/// One SVG document overlaying all balls. The balls are expected to share
/// frame, weights, center and radius; annotations use the first one.
pub fn render_svg(balls: &[BallSpec], samples: usize, style: &RenderStyle) -> Result<String, CliError> {
    style.validate()?;
    let first = balls
        .first()
        .ok_or_else(|| CliError::Input("at least one p value is needed".into()))?;
    let curves = balls
        .iter()
        .map(|b| {
            Ok(match ball_curve(b, samples)? {
                Curve::Polygon(v) => Curve::Polygon(v.map(|p| snap_to_grid(b, p))),
                Curve::Polyline(v) => Curve::Polyline(v.into_iter().map(|p| snap_to_grid(b, p)).collect()),
                e @ Curve::Ellipse(_) => e,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let q = if style.draw_q_points { Some(common_points(first)?) } else { None };
    let mut bbox = Bbox::empty();
    curves.iter().for_each(|c| bbox.add_curve(c));
    bbox.add(first.center());
    if let Some(q) = &q {
        q.iter().for_each(|&p| bbox.add(p));
    }
    let size = bbox.max - bbox.min;
    let pad = size * style.margin;
    let (min, max) = (bbox.min - pad, bbox.max + pad);
    let (w, h) = (max.x - min.x, max.y - min.y);
    let span = w.max(h);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        style.width,
        style.height,
        fixed6(min.x),
        fixed6(-max.y),
        fixed6(w),
        fixed6(h)
    );
    // y axis points up inside the group
    s.push_str("<g transform=\"scale(1,-1)\" fill=\"none\">\n");

    if style.draw_lines {
        let f = first.frame();
        for (name, dir) in [("l1", f.l1_direction()), ("l2", f.l2_direction())] {
            let (a, b) = (first.center() - dir * (2.0 * span), first.center() + dir * (2.0 * span));
            let _ = writeln!(
                s,
                "<line id=\"{name}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#555555\" stroke-dasharray=\"4 3\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>",
                fixed6(a.x),
                fixed6(a.y),
                fixed6(b.x),
                fixed6(b.y)
            );
        }
    }

    for (i, (ball, curve)) in balls.iter().zip(&curves).enumerate() {
        let label = p_label(ball);
        let _ = writeln!(
            s,
            "<path id=\"ball-p{label}\" data-p=\"{label}\" d=\"{}\" stroke=\"{}\" stroke-width=\"{}\" vector-effect=\"non-scaling-stroke\"><title>p = {label}</title></path>",
            path_data(curve),
            style.colors[i % style.colors.len()],
            style.stroke_width
        );
    }

    if let Some(q) = q {
        let r = 0.006 * span;
        for (name, p) in ["Q1", "Q2", "Q1'", "Q2'"].iter().zip(q) {
            let _ = writeln!(
                s,
                "<circle class=\"q-point\" data-name=\"{name}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#000000\"/>",
                fixed6(p.x),
                fixed6(p.y),
                fixed6(r)
            );
        }
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}

/// Sampled boundary points of every ball. With one ball the header is
/// `x,y`; with several it is `p,x,y`.
pub fn render_csv(balls: &[BallSpec], samples: usize) -> Result<String, CliError> {
    if samples < 8 {
        return Err(CliError::Input(format!("csv output needs at least 8 samples, got {samples}")));
    }
    if balls.is_empty() {
        return Err(CliError::Input("at least one p value is needed".into()));
    }
    let multi = balls.len() > 1;
    let mut s = String::from(if multi { "p,x,y\n" } else { "x,y\n" });
    for ball in balls {
        let label = p_label(ball);
        for p in ball_boundary_points(ball, samples)?.points {
            if multi {
                let _ = write!(s, "{label},");
            }
            let _ = writeln!(s, "{},{}", shortest(p.x), shortest(p.y));
        }
    }
    Ok(s)
}
