//! The `wkit` command line.
//!
//! Exit codes: `0` when every check passes, `1` for a verification failure,
//! `2` for bad input. Output is deterministic for a fixed command line.

pub mod sweep;

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curve::{
    jets_from_all_samples, read_samples_csv, theorem4_report, Curve, Theorem4Report,
    ANALYTIC_UNIT_SPEED_TOL, SAMPLED_UNIT_SPEED_TOL,
};
use crate::error::Error;
use crate::euclid::Vector;
use crate::exact_field::parse_rational;
use crate::shape_space::{
    circle_residual, classify, emit_figure, halfdisk_contains, shape_point, tangent_line_slope,
    HalfDisk, ShapeCircle, ShapeClass, ShapePoint,
};
use crate::weitzenboeck::{
    area_heron, defect_explicit, defect_intrinsic, triangle_defect, triangle_to_vectors,
    verify_exact, verify_identity, IdentityReport, Triangle,
};
use crate::DEFAULT_TOL;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "wkit", version, about = "Ionescu-Weitzenböck defect, shape-space and curvature checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,

    /// Relative tolerance for all checks (default 1e-9).
    #[arg(long, global = true, env = "WKIT_TOL", value_parser = positive_f64)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Defect of the inequality for a triangle or a pair of vectors.
    Defect(DefectArgs),
    /// Randomized verification of the vector identity.
    Sweep(SweepArgs),
    /// Shape-plane point and classification, or the half-disk figure as CSV.
    Shape(ShapeArgs),
    /// Curvature identity along a built-in curve or sampled data.
    Curve(CurveArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "defect_input")]
pub struct DefectInput {
    /// Side lengths a b c.
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_negative_numbers = true)]
    pub sides: Option<Vec<f64>>,
    /// First vector, comma separated (requires --v).
    #[arg(long, requires = "v", allow_hyphen_values = true)]
    pub u: Option<String>,
}

#[derive(Debug, Args)]
pub struct DefectArgs {
    #[command(flatten)]
    pub input: DefectInput,
    /// Second vector, comma separated.
    #[arg(long, requires = "u", allow_hyphen_values = true)]
    pub v: Option<String>,
    /// Check the identity exactly in Q[√3] (planar vectors; integers, fractions or decimals).
    #[arg(long, requires = "u")]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exact Q[√3] sweep over rational planar pairs.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ShapeInput {
    /// Side lengths a b c (c is the base).
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_negative_numbers = true)]
    pub sides: Option<Vec<f64>>,
    /// Emit the figure dataset for s = a² + b².
    #[arg(long, value_name = "S", allow_negative_numbers = true)]
    pub figure: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    #[command(flatten)]
    pub input: ShapeInput,
    /// Points per sampled curve in the figure.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CurveInput {
    /// circle:<rho> | helix:<a>:<b> | line[:<dx>:<dy>:<dz>]
    #[arg(long)]
    pub builtin: Option<String>,
    /// CSV file with header t,x,y,z and uniform spacing.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub source: CurveInput,
    /// Parameter range start:end:step for --builtin.
    #[arg(long, default_value = "0:6.283185307179586:0.1", allow_hyphen_values = true)]
    pub t: String,
    /// Allowed |‖r'‖ − 1| (default 1e-12 for built-ins, 1e-6 for samples).
    #[arg(long, value_parser = positive_f64)]
    pub unit_tol: Option<f64>,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(format!("must be a positive number, got {s}"))
    }
}

/// Resolved settings shared by all subcommands.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub format: Format,
    pub tolerance: f64,
}

/// Failure of a command: input problem (exit 2) or failed check (exit 1).
#[derive(Debug)]
enum Failure {
    Input(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    execute(&cli, out, err)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cfg = RunConfig {
        format: cli.format,
        tolerance: cli.tol.unwrap_or(DEFAULT_TOL),
    };
    let result = match &cli.command {
        Command::Defect(a) => cmd_defect(a, cfg, out),
        Command::Sweep(a) => cmd_sweep(a, cfg, out),
        Command::Shape(a) => cmd_shape(a, cfg, out),
        Command::Curve(a) => cmd_curve(a, cfg, out, err),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Check) => EXIT_FAIL,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

/// Writes `fields` as `key: value` lines, a JSON object, or a one-row CSV.
fn emit_record<T: Serialize>(out: &mut dyn Write, format: Format, record: &T) -> CmdResult {
    let value = serde_json::to_value(record).map_err(|e| Failure::Input(e.to_string()))?;
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&value).map_err(|e| Failure::Input(e.to_string()))?;
            writeln!(out, "{text}")?;
        }
        Format::Text => {
            for (k, v) in value.as_object().into_iter().flatten() {
                writeln!(out, "{k}: {}", plain(v))?;
            }
        }
        Format::Csv => {
            let obj = value.as_object().cloned().unwrap_or_default();
            let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
            let vals: Vec<String> = obj.values().map(plain).collect();
            writeln!(out, "{}", keys.join(","))?;
            writeln!(out, "{}", vals.join(","))?;
        }
    }
    Ok(())
}

fn plain(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(plain).collect();
            format!("({})", parts.join(" "))
        }
        other => other.to_string(),
    }
}

fn parse_vector(text: &str) -> Result<Vector, Failure> {
    let coords = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Input(format!("bad coordinate {s:?} in {text:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Vector::new(coords)?)
}

#[derive(Serialize)]
struct TriangleDefectRecord {
    a: f64,
    b: f64,
    c: f64,
    lhs: f64,
    area: f64,
    wedge_term: f64,
    defect: f64,
    defect_intrinsic: f64,
    defect_explicit: f64,
    equality: bool,
}

#[derive(Serialize)]
struct VectorDefectRecord {
    u: Vector,
    v: Vector,
    #[serde(flatten)]
    report: IdentityReport,
}

#[derive(Serialize)]
struct ExactDefectRecord {
    u: Vec<String>,
    v: Vec<String>,
    residual: String,
    residual_is_zero: bool,
}

fn cmd_defect(args: &DefectArgs, cfg: RunConfig, out: &mut dyn Write) -> CmdResult {
    if let Some(sides) = &args.input.sides {
        let t = Triangle::new(sides[0], sides[1], sides[2])?;
        let (u, v) = triangle_to_vectors(&t)?;
        let lhs = t.square_sum();
        let area = area_heron(&t)?;
        let defect = triangle_defect(&t)?;
        let record = TriangleDefectRecord {
            a: t.a(),
            b: t.b(),
            c: t.c(),
            lhs,
            area,
            wedge_term: 4.0 * 3f64.sqrt() * area,
            defect,
            defect_intrinsic: defect_intrinsic(&u, &v)?,
            defect_explicit: defect_explicit(&u, &v)?,
            equality: defect <= cfg.tolerance * lhs.max(1.0),
        };
        return emit_record(out, cfg.format, &record);
    }

    let (u_text, v_text) = match (&args.input.u, &args.v) {
        (Some(u), Some(v)) => (u, v),
        _ => return Err(Failure::Input("--u and --v are both required".into())),
    };
    if args.exact {
        let parse = |text: &str| -> Result<Vector<crate::Rational>, Failure> {
            let coords = text
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Vector::new(coords)?)
        };
        let (u, v) = (parse(u_text)?, parse(v_text)?);
        let residual = verify_exact(&u, &v)?;
        let record = ExactDefectRecord {
            u: u.coords().iter().map(|x| x.to_string()).collect(),
            v: v.coords().iter().map(|x| x.to_string()).collect(),
            residual: residual.to_string(),
            residual_is_zero: residual.is_zero(),
        };
        emit_record(out, cfg.format, &record)?;
        return if record.residual_is_zero {
            Ok(())
        } else {
            Err(Failure::Check)
        };
    }

    let u = parse_vector(u_text)?;
    let v = parse_vector(v_text)?;
    let report = verify_identity(&u, &v, cfg.tolerance)?;
    let ok = report.passes(cfg.tolerance);
    emit_record(out, cfg.format, &VectorDefectRecord { u, v, report })?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn cmd_sweep(args: &SweepArgs, cfg: RunConfig, out: &mut dyn Write) -> CmdResult {
    let count = args.count as usize;
    let pass = if args.exact {
        let summary = sweep::run_exact_sweep(count, args.seed);
        emit_record(out, cfg.format, &summary)?;
        summary.pass
    } else {
        let summary = sweep::run_sweep(count, args.seed, cfg.tolerance);
        emit_record(out, cfg.format, &summary)?;
        summary.pass
    };
    if pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

#[derive(Serialize)]
struct ShapeRecord {
    a: f64,
    b: f64,
    c: f64,
    point: ShapePoint,
    circle: ShapeCircle,
    circle_residual: f64,
    halfdisk: HalfDisk,
    in_halfdisk: bool,
    slope_ratio: f64,
    tangent_slope: f64,
    class: ShapeClass,
}

fn cmd_shape(args: &ShapeArgs, cfg: RunConfig, out: &mut dyn Write) -> CmdResult {
    if let Some(s) = args.input.figure {
        let figure = emit_figure(s, args.samples)?;
        match cfg.format {
            Format::Json => {
                let text = serde_json::to_string_pretty(&figure)
                    .map_err(|e| Failure::Input(e.to_string()))?;
                writeln!(out, "{text}")?;
            }
            Format::Text | Format::Csv => out.write_all(figure.to_csv().as_bytes())?,
        }
        return Ok(());
    }
    let sides = args.input.sides.as_ref().expect("clap group is required");
    let t = Triangle::new(sides[0], sides[1], sides[2])?;
    let p = shape_point(&t)?;
    let circle = ShapeCircle::of(&t);
    let disk = HalfDisk::of(&t);
    let record = ShapeRecord {
        a: t.a(),
        b: t.b(),
        c: t.c(),
        point: p,
        circle,
        circle_residual: circle_residual(&p, &circle),
        halfdisk: disk,
        in_halfdisk: halfdisk_contains(&p, &disk, cfg.tolerance),
        slope_ratio: p.y / p.x,
        tangent_slope: tangent_line_slope(),
        class: classify(&t, cfg.tolerance)?,
    };
    emit_record(out, cfg.format, &record)
}

/// Parses `circle:<rho>`, `helix:<a>:<b>` or `line[:dx:dy:dz]`.
pub fn parse_builtin(spec: &str) -> Result<Curve, Error> {
    let mut parts = spec.split(':');
    let kind = parts.next().unwrap_or_default();
    let nums = parts
        .map(|p| p.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number {p:?} in {spec:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    match (kind, nums.as_slice()) {
        ("circle", [rho]) => Curve::circle(*rho),
        ("helix", [a, b]) => Curve::helix(*a, *b),
        ("line", []) => Curve::line([1.0, 0.0, 0.0]),
        ("line", [x, y, z]) => {
            let n = (x * x + y * y + z * z).sqrt();
            if !(n > 0.0 && n.is_finite()) {
                return Err(Error::InvalidCurve(format!("line direction must be nonzero in {spec:?}")));
            }
            Curve::line([x / n, y / n, z / n])
        }
        _ => Err(Error::Parse(format!(
            "unknown curve {spec:?}; expected circle:<rho>, helix:<a>:<b> or line[:dx:dy:dz]"
        ))),
    }
}

/// Parses `start:end:step` into the grid `start + k·step ≤ end`.
pub fn parse_range(spec: &str) -> Result<Vec<f64>, Error> {
    let nums = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad range {spec:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let [start, end, step] = nums[..] else {
        return Err(Error::Parse(format!("range must be start:end:step, got {spec:?}")));
    };
    if !(start.is_finite() && end.is_finite() && step.is_finite() && step > 0.0 && end >= start) {
        return Err(Error::Parse(format!("invalid range {spec:?}")));
    }
    let n = ((end - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|k| start + step * k as f64).collect())
}

#[derive(Serialize)]
struct CurveSummary {
    points: usize,
    max_abs_residual: f64,
    max_path_gap: f64,
    inequality_violations: usize,
    failures: usize,
    pass: bool,
}

#[derive(Serialize)]
struct CurveOutput<'a> {
    reports: &'a [Theorem4Report],
    summary: &'a CurveSummary,
}

fn cmd_curve(args: &CurveArgs, cfg: RunConfig, out: &mut dyn Write, _err: &mut dyn Write) -> CmdResult {
    let reports: Vec<Theorem4Report> = if let Some(spec) = &args.source.builtin {
        let curve = parse_builtin(spec)?;
        let unit_tol = args.unit_tol.unwrap_or(ANALYTIC_UNIT_SPEED_TOL);
        parse_range(&args.t)?
            .into_iter()
            .map(|t| theorem4_report(&curve.jet(t), unit_tol))
            .collect::<Result<_, _>>()?
    } else {
        let path = args.source.input.as_ref().expect("clap group is required");
        let file = File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let samples = read_samples_csv(file)?;
        let unit_tol = args.unit_tol.unwrap_or(SAMPLED_UNIT_SPEED_TOL);
        let jets = jets_from_all_samples(&samples)?;
        let mut reports = Vec::with_capacity(jets.len());
        for (k, jet) in jets.iter().enumerate() {
            // jet k sits on data row k + 2 (1-based, header excluded)
            let report = theorem4_report(jet, unit_tol).map_err(|e| match e {
                Error::NotUnitSpeed { .. } => {
                    Failure::Input(format!("unit-speed violated at row {}: {e}", k + 2))
                }
                other => other.into(),
            })?;
            reports.push(report);
        }
        reports
    };

    let tol = cfg.tolerance;
    let summary = CurveSummary {
        points: reports.len(),
        max_abs_residual: reports.iter().map(|r| r.residual.abs()).fold(0.0, f64::max),
        max_path_gap: reports
            .iter()
            .map(|r| (r.defect - r.defect_intrinsic).abs())
            .fold(0.0, f64::max),
        inequality_violations: reports.iter().filter(|r| !r.inequality_holds(tol)).count(),
        failures: reports.iter().filter(|r| !r.passes(tol)).count(),
        pass: reports.iter().all(|r| r.passes(tol)),
    };

    match cfg.format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&CurveOutput {
                reports: &reports,
                summary: &summary,
            })
            .map_err(|e| Failure::Input(e.to_string()))?;
            writeln!(out, "{text}")?;
        }
        Format::Csv => {
            writeln!(out, "t,curvature,rhs_bound,defect,defect_intrinsic,residual")?;
            for r in &reports {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.t, r.curvature, r.rhs_bound, r.defect, r.defect_intrinsic, r.residual
                )?;
            }
        }
        Format::Text => {
            for r in &reports {
                writeln!(
                    out,
                    "t={} K={} rhs_bound={} defect={} residual={:e}",
                    r.t, r.curvature, r.rhs_bound, r.defect, r.residual
                )?;
            }
            writeln!(
                out,
                "summary: points={} max_abs_residual={:e} inequality_violations={} pass={}",
                summary.points, summary.max_abs_residual, summary.inequality_violations, summary.pass
            )?;
        }
    }
    if summary.pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
