//! The four commands. Each returns its output as a string so the binary
//! decides where it goes.

use std::fmt::Write as _;

use geomink::verify::{ball_suite, conic_suite, p_limit_for_metric, p_limit_suite};
use geomink::{
    ball_from_ellipse, check_center_symmetry, check_invariance, check_metric_axioms,
    eccentric_radius, eccentricity, eccentrix_form_from_ellipse, ellipse_from_eccentrix_form,
    ellipse_from_weighted_ball, find_triangle_violation, maximum_ball_from_rhombus,
    taxicab_ball_from_rectangle, BallKind, BallSpec, EccentrixForm, EllipseParams, Exponent,
    Frame2, LinePair, Point, PropertyReport, RectangleSpec, RhombusSpec, SampleConfig, Vec2,
};

use crate::numfmt::sig15;
use crate::render::{render_csv, render_svg, RenderStyle};
use crate::spec_doc::SpecDocument;
use crate::CliError;

/// Comma-separated reals, e.g. `1.5,-2`.
pub fn parse_reals(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Input(format!("not a finite number: {s:?} in {text:?}")))
        })
        .collect()
}

pub fn parse_vec2(text: &str) -> Result<Vec2, CliError> {
    match parse_reals(text)?[..] {
        [x, y] => Ok(Vec2::new(x, y)),
        _ => Err(CliError::Input(format!("expected X,Y, got {text:?}"))),
    }
}

/// Comma-separated exponents; `inf` is accepted.
pub fn parse_p_list(text: &str) -> Result<Vec<Exponent>, CliError> {
    text.split(',')
        .map(|s| match s.trim() {
            "inf" => Ok(Exponent::Infinity),
            t => {
                let p: f64 = t
                    .parse()
                    .map_err(|_| CliError::Input(format!("not an exponent: {t:?}")))?;
                Ok(Exponent::new(p)?)
            }
        })
        .collect()
}

fn spec_or_default(doc: Option<&SpecDocument>) -> SpecDocument {
    doc.cloned().unwrap_or_else(SpecDocument::default_planar)
}

pub fn dist(doc: Option<&SpecDocument>, x: &str, y: &str) -> Result<String, CliError> {
    let metric = spec_or_default(doc).to_metric()?;
    let x = Point::new(parse_reals(x)?)?;
    let y = Point::new(parse_reals(y)?)?;
    if x.dim() != metric.dim() || y.dim() != metric.dim() {
        return Err(CliError::Input(format!(
            "points must have {} coordinates, got {} and {}",
            metric.dim(),
            x.dim(),
            y.dim()
        )));
    }
    Ok(format!("{}\n", sig15(metric.distance(&x, &y)?)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Svg,
}

#[derive(Debug, Clone)]
pub struct BallRequest {
    pub center: Vec2,
    pub radius: f64,
    /// `None` uses the exponent of the spec.
    pub p_list: Option<Vec<Exponent>>,
    pub format: OutputFormat,
    pub samples: usize,
    pub style: RenderStyle,
}

pub fn ball(doc: Option<&SpecDocument>, req: &BallRequest) -> Result<String, CliError> {
    let (frame, weights, exponent) = spec_or_default(doc).to_planar()?;
    let p_list = req.p_list.clone().unwrap_or_else(|| vec![exponent]);
    if p_list.is_empty() {
        return Err(CliError::Input("at least one p value is needed".into()));
    }
    let balls = p_list
        .iter()
        .map(|&p| BallSpec::new(frame, weights, req.center, req.radius, BallKind::from_exponent(p)))
        .collect::<Result<Vec<_>, _>>()?;
    match req.format {
        OutputFormat::Csv => render_csv(&balls, req.samples),
        OutputFormat::Svg => {
            if req.samples < 4 {
                return Err(CliError::Input(format!("need at least 4 samples, got {}", req.samples)));
            }
            render_svg(&balls, req.samples, &req.style)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvertKind {
    Ellipse2Ball,
    Ball2Ellipse,
    Rect2Taxi,
    Rhomb2Max,
    Ellipse2Eccx,
    Eccx2Ellipse,
}

/// Parameters of `convert`; each kind reads the fields it needs.
#[derive(Debug, Clone, Default)]
pub struct ConvertParams {
    pub center: Option<Vec2>,
    pub radius: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub e: Option<f64>,
    pub f: Option<f64>,
    /// Radians.
    pub angle: Option<f64>,
    /// `A,B,C` for the line `Ax + By + C = 0`.
    pub line1: Option<String>,
    pub line2: Option<String>,
    pub constant: Option<f64>,
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Input(format!("{kind} needs --{flag}")))
}

fn kv(out: &mut String, key: &str, values: &[f64]) {
    let vals: Vec<String> = values.iter().map(|&v| sig15(v)).collect();
    let _ = writeln!(out, "{key} {}", vals.join(" "));
}

fn write_frame(out: &mut String, frame: &Frame2, radius: f64) {
    kv(out, "v1", &[frame.v1().x, frame.v1().y]);
    kv(out, "v2", &[frame.v2().x, frame.v2().y]);
    kv(out, "radius", &[radius]);
}

fn write_ellipse(out: &mut String, e: &EllipseParams) {
    kv(out, "center", &[e.center().x, e.center().y]);
    kv(out, "a", &[e.a()]);
    kv(out, "b", &[e.b()]);
    kv(out, "angle", &[e.angle()]);
    kv(out, "eccentricity", &[eccentricity(e)]);
    kv(out, "eccentric_radius", &[eccentric_radius(e)]);
}

/// `A,B,C` → unit normal and offset.
fn parse_line(text: &str) -> Result<(Vec2, f64), CliError> {
    match parse_reals(text)?[..] {
        [a, b, c] => {
            let n = Vec2::new(a, b);
            let len = n.norm();
            if len == 0.0 {
                return Err(CliError::Input(format!("line {text:?} has a zero normal")));
            }
            Ok((n * (1.0 / len), c / len))
        }
        _ => Err(CliError::Input(format!("expected A,B,C, got {text:?}"))),
    }
}

fn line_pair(l1: &str, l2: &str) -> Result<LinePair, CliError> {
    let ((n1, c1), (n2, c2)) = (parse_line(l1)?, parse_line(l2)?);
    let det = n1.cross(n2);
    if det.abs() <= geomink::tol::EPS_INDEP {
        return Err(geomink::GeomError::DependentFrame { det }.into());
    }
    // n1·p = −c1, n2·p = −c2
    let point = Vec2::new((-c1 * n2.y + c2 * n1.y) / det, (-c2 * n1.x + c1 * n2.x) / det);
    Ok(LinePair::new(point, n1.perp(), n2.perp())?)
}

pub fn convert(kind: ConvertKind, doc: Option<&SpecDocument>, p: &ConvertParams) -> Result<String, CliError> {
    let center = p.center.unwrap_or(Vec2::ZERO);
    let angle = p.angle.unwrap_or(0.0);
    let mut out = String::new();
    match kind {
        ConvertKind::Ellipse2Ball => {
            let name = "ellipse2ball";
            let e = EllipseParams::new(center, need(p.a, "a", name)?, need(p.b, "b", name)?, angle)?;
            let (frame, r) = ball_from_ellipse(&e);
            write_frame(&mut out, &frame, r);
        }
        ConvertKind::Ball2Ellipse => {
            let (frame, weights, _) = spec_or_default(doc).to_planar()?;
            let spec = BallSpec::new(frame, weights, center, need(p.radius, "radius", "ball2ellipse")?, BallKind::Euclidean)?;
            write_ellipse(&mut out, &ellipse_from_weighted_ball(&spec)?);
        }
        ConvertKind::Rect2Taxi => {
            let name = "rect2taxi";
            let rect = RectangleSpec::new(center, need(p.a, "a", name)?, need(p.b, "b", name)?, angle)?;
            let (frame, r) = taxicab_ball_from_rectangle(&rect);
            write_frame(&mut out, &frame, r);
        }
        ConvertKind::Rhomb2Max => {
            let name = "rhomb2max";
            let rh = RhombusSpec::new(center, need(p.e, "e", name)?, need(p.f, "f", name)?, angle)?;
            let (frame, r) = maximum_ball_from_rhombus(&rh);
            write_frame(&mut out, &frame, r);
        }
        ConvertKind::Ellipse2Eccx => {
            let name = "ellipse2eccx";
            let e = EllipseParams::new(center, need(p.a, "a", name)?, need(p.b, "b", name)?, angle)?;
            let form = eccentrix_form_from_ellipse(&e);
            let (n1, n2) = form.lines().normals();
            let c = form.lines().point();
            // lines as A x + B y + C = 0 with a unit normal, first nonzero
            // of A, B positive
            for (key, n) in [("line1", n1), ("line2", n2)] {
                let n = if n.x < 0.0 || (n.x == 0.0 && n.y < 0.0) { -n } else { n };
                kv(&mut out, key, &[n.x, n.y, -n.dot(c)]);
            }
            kv(&mut out, "constant", &[form.constant()]);
        }
        ConvertKind::Eccx2Ellipse => {
            let name = "eccx2ellipse";
            let l1 = p.line1.as_deref().ok_or_else(|| CliError::Input(format!("{name} needs --line1")))?;
            let l2 = p.line2.as_deref().ok_or_else(|| CliError::Input(format!("{name} needs --line2")))?;
            let form = EccentrixForm::new(line_pair(l1, l2)?, need(p.constant, "constant", name)?)?;
            write_ellipse(&mut out, &ellipse_from_eccentrix_form(&form));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Plimit,
    Balls,
    Invariance,
    Conics,
    All,
}

/// Report lines, a witness line for failing checks that have one, and a
/// closing `SUMMARY` line. The flag is true iff every property passed.
pub fn verify(suite: Suite, doc: Option<&SpecDocument>, seed: u64, count: usize) -> Result<(String, bool), CliError> {
    let metric = spec_or_default(doc).to_metric()?;
    let cfg = SampleConfig::new(seed, count, 10.0, metric.dim())?;
    let planar = cfg.with_dimension(2);
    let mut reports: Vec<PropertyReport> = Vec::new();
    let run = |s: Suite| suite == s || suite == Suite::All;

    if run(Suite::Axioms) {
        reports.push(if metric.is_metric() {
            check_metric_axioms(&metric, &cfg)?
        } else {
            find_triangle_violation(&metric, &cfg)?
        });
    }
    if run(Suite::Plimit) {
        reports.push(p_limit_suite(&cfg));
        let mut own = p_limit_for_metric(&metric, &cfg)?;
        own.name = "p_limit_spec".into();
        reports.push(own);
    }
    if run(Suite::Balls) {
        reports.extend(ball_suite(&planar));
    }
    if run(Suite::Invariance) {
        reports.extend(check_invariance(&metric, &cfg)?);
        reports.push(check_center_symmetry(&metric, &cfg)?);
    }
    if run(Suite::Conics) {
        reports.extend(conic_suite(&planar));
    }

    let mut out = String::new();
    for r in &reports {
        let _ = writeln!(out, "{r}");
        if let Some(w) = r.witness.as_ref().filter(|_| !r.passed) {
            let pts: Vec<String> = w
                .iter()
                .map(|p| {
                    let c: Vec<String> = p.coords().iter().map(|&v| sig15(v)).collect();
                    format!("({})", c.join(","))
                })
                .collect();
            let _ = writeln!(out, "WITNESS {} {}", r.name, pts.join(" "));
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let failed = reports.len() - passed;
    let _ = writeln!(out, "SUMMARY passed={passed} failed={failed}");
    Ok((out, failed == 0))
}
