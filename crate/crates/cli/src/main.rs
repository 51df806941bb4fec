use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geomctl::commands::{
    self, parse_p_list, parse_vec2, BallRequest, ConvertKind, ConvertParams, OutputFormat, Suite,
};
use geomctl::render::RenderStyle;
use geomctl::spec_doc::{ExponentValue, SpecDocument};
use geomctl::CliError;

/// Minkowski-type distances on arbitrary frames: distances, circles,
/// conversions and verification suites.
#[derive(Parser, Debug)]
#[command(name = "geomctl", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the distance between two points.
    Dist {
        /// JSON spec file; defaults to the identity frame with p = 2.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Exponent overriding the spec's, `inf` allowed.
        #[arg(long)]
        p: Option<String>,
        /// First point, e.g. `0,0`.
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Second point, e.g. `3,4`.
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Render circles of one or more exponents as SVG or CSV.
    Ball(BallArgs),
    /// Convert between circles, ellipses, rectangles, rhombi and eccentrices.
    Convert(ConvertArgs),
    /// Run a verification suite; exits 1 if any property fails.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct BallArgs {
    /// JSON spec file (2-dimensional); defaults to the identity frame.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    center: String,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    radius: f64,
    /// Comma-separated exponents, `inf` allowed; defaults to the spec's.
    #[arg(long)]
    p: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Svg)]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Boundary points per sampled curve.
    #[arg(long, default_value_t = 360)]
    samples: usize,
    /// Draw the lines l1, l2 and the four common points.
    #[arg(long)]
    annotate: bool,
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 800)]
    height: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Ellipse2ball,
    Ball2ellipse,
    Rect2taxi,
    Rhomb2max,
    Ellipse2eccx,
    Eccx2ellipse,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Spec file for ball2ellipse.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    center: Option<String>,
    #[arg(long)]
    radius: Option<f64>,
    /// Semi-axis along the angle (ellipse) or half side (rectangle).
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    /// Half diagonal of a rhombus along the angle.
    #[arg(long)]
    e: Option<f64>,
    #[arg(long)]
    f: Option<f64>,
    /// Rotation in radians.
    #[arg(long, allow_hyphen_values = true)]
    angle: Option<f64>,
    /// `A,B,C` for the line `Ax + By + C = 0`.
    #[arg(long, allow_hyphen_values = true)]
    line1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    line2: Option<String>,
    /// Sum of squared distances to the two lines.
    #[arg(long)]
    constant: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
    /// Spec used by axioms, plimit and invariance; defaults to the identity.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Exponent overriding the spec's, `inf` allowed.
    #[arg(long)]
    p: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    count: usize,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Axioms,
    Plimit,
    Balls,
    Invariance,
    Conics,
    All,
}

fn load(spec: Option<&Path>) -> Result<Option<SpecDocument>, CliError> {
    spec.map(SpecDocument::load).transpose()
}

/// The spec (or the default one) with its exponent replaced by `p`.
fn load_with_p(spec: Option<&Path>, p: Option<&str>) -> Result<Option<SpecDocument>, CliError> {
    let doc = load(spec)?;
    let Some(p) = p else { return Ok(doc) };
    let mut doc = doc.unwrap_or_else(SpecDocument::default_planar);
    doc.exponent = match parse_p_list(p)?[..] {
        [e] => ExponentValue::from(e),
        _ => return Err(CliError::Input(format!("expected one exponent, got {p:?}"))),
    };
    Ok(Some(doc))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Dist { spec, p, x, y } => {
            let doc = load_with_p(spec.as_deref(), p.as_deref())?;
            emit(&commands::dist(doc.as_ref(), &x, &y)?, None)?;
            Ok(true)
        }
        Command::Ball(a) => {
            let doc = load(a.spec.as_deref())?;
            let req = BallRequest {
                center: parse_vec2(&a.center)?,
                radius: a.radius,
                p_list: a.p.as_deref().map(parse_p_list).transpose()?,
                format: match a.format {
                    Format::Csv => OutputFormat::Csv,
                    Format::Svg => OutputFormat::Svg,
                },
                samples: a.samples,
                style: RenderStyle {
                    width: a.width,
                    height: a.height,
                    draw_lines: a.annotate,
                    draw_q_points: a.annotate,
                    ..RenderStyle::default()
                },
            };
            emit(&commands::ball(doc.as_ref(), &req)?, a.out.as_deref())?;
            Ok(true)
        }
        Command::Convert(a) => {
            let doc = load(a.spec.as_deref())?;
            let kind = match a.kind {
                Kind::Ellipse2ball => ConvertKind::Ellipse2Ball,
                Kind::Ball2ellipse => ConvertKind::Ball2Ellipse,
                Kind::Rect2taxi => ConvertKind::Rect2Taxi,
                Kind::Rhomb2max => ConvertKind::Rhomb2Max,
                Kind::Ellipse2eccx => ConvertKind::Ellipse2Eccx,
                Kind::Eccx2ellipse => ConvertKind::Eccx2Ellipse,
            };
            let params = ConvertParams {
                center: a.center.as_deref().map(parse_vec2).transpose()?,
                radius: a.radius,
                a: a.a,
                b: a.b,
                e: a.e,
                f: a.f,
                angle: a.angle,
                line1: a.line1,
                line2: a.line2,
                constant: a.constant,
            };
            emit(&commands::convert(kind, doc.as_ref(), &params)?, None)?;
            Ok(true)
        }
        Command::Verify(a) => {
            let doc = load_with_p(a.spec.as_deref(), a.p.as_deref())?;
            let suite = match a.suite {
                SuiteArg::Axioms => Suite::Axioms,
                SuiteArg::Plimit => Suite::Plimit,
                SuiteArg::Balls => Suite::Balls,
                SuiteArg::Invariance => Suite::Invariance,
                SuiteArg::Conics => Suite::Conics,
                SuiteArg::All => Suite::All,
            };
            let (report, passed) = commands::verify(suite, doc.as_ref(), a.seed, a.count)?;
            print!("{report}");
            if let Some(path) = a.out.as_deref() {
                emit(&report, Some(path))?;
            }
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("geomctl: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
