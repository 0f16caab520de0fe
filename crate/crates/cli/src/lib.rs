//! Command-line front end for `horoslab`.
//!
//! Every subcommand writes one artifact (CSV, JSON or SVG) to stdout or to
//! `--out`. Exit codes: 0 success, 1 I/O, 2 invalid input, 3 no candidate,
//! 4 numerical failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod records;
pub mod svg;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use horoslab::measure::{area_cartesian, area_natural, volume_contour, Arc, MeridianContour};
use horoslab::solver::{default_h_grid, sweep_candidates, Candidate, SweepOptions, RADIUS_GRID};
use horoslab::tangency::{
    admissible_tangencies_with, algebraic_roots, canonical_window, classify_family, discriminant, slab_admissibility,
    tube_spans, SpanKind, Window,
};
use horoslab::{profile_polyline, Error, FamilyParams, Quadrature, Regime, SlabSpec};
use serde_json::{json, Value};

use records::{admissibility_label, num, CandidateRecord, FamilyRecord, IsoPointRecord, SampleRecord, TangencyRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_CANDIDATE: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

pub const PROFILE_SCHEMA: &str = include_str!("../schemas/profile.schema.json");
pub const TANGENCY_SCHEMA: &str = include_str!("../schemas/tangency.schema.json");
pub const CLASSIFY_SCHEMA: &str = include_str!("../schemas/classify.schema.json");
pub const MEASURE_SCHEMA: &str = include_str!("../schemas/measure.schema.json");
pub const SOLVE_SCHEMA: &str = include_str!("../schemas/solve.schema.json");
pub const SWEEP_SCHEMA: &str = include_str!("../schemas/sweep.schema.json");

#[derive(Debug, Parser)]
#[command(
    name = "horoslab",
    version,
    about = "Rotational CMC surfaces and the isoperimetric problem in a horosphere slab"
)]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a profile curve.
    Profile(ProfileArgs),
    /// Vertical tangencies of a family.
    Tangency(TangencyArgs),
    /// Family kind and slab admissibility.
    Classify(FamilyOnly),
    /// Area and volume of a tube, dome or geodesic sphere.
    Measure(MeasureArgs),
    /// Least-area region of one volume in a slab.
    Solve(SolveArgs),
    /// Least area over a grid of volumes.
    Sweep(SweepArgs),
    /// SVG of a profile curve with its tangency horocycles.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Maximum worker threads.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key=value file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// h1, sub or super; inferred from H when omitted.
    #[arg(long)]
    pub regime: Option<String>,
    #[arg(long = "H", allow_negative_numbers = true)]
    pub h: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyOnly {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub s_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub s_max: Option<f64>,
    #[arg(long, default_value_t = 400)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct TangencyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub s_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub s_max: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

pub type PlotArgs = ProfileArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Tube,
    LowerDome,
    UpperDome,
    Sphere,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    #[arg(long, value_enum, default_value = "tube")]
    pub shape: Shape,
    #[arg(long)]
    pub regime: Option<String>,
    #[arg(long = "H", allow_negative_numbers = true)]
    pub h: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Height of the Euclidean centre for domes and spheres.
    #[arg(long)]
    pub center: Option<f64>,
    /// Euclidean radius for domes and spheres.
    #[arg(long)]
    pub radius: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SlabArgs {
    #[arg(long)]
    pub c1: f64,
    #[arg(long)]
    pub c2: f64,
    /// Samples of each dome and sphere family.
    #[arg(long, default_value_t = RADIUS_GRID)]
    pub radius_grid: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub slab: SlabArgs,
    #[arg(long)]
    pub volume: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub slab: SlabArgs,
    /// Comma-separated volumes; overrides the log-spaced grid.
    #[arg(long, value_delimiter = ',')]
    pub volumes: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.01)]
    pub v_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub v_max: f64,
    #[arg(long, default_value_t = 16)]
    pub v_count: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Io(_) => EXIT_IO,
            Failure::Lib(e) => match e {
                Error::InvalidParameter(_) | Error::NotATangency { .. } => EXIT_INVALID,
                Error::NoCandidate { .. } => EXIT_NO_CANDIDATE,
                _ => EXIT_NUMERICAL,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Invalid(m) | Failure::Io(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Runs the tool with `args` (program name first) on the process streams.
pub fn run(args: Vec<String>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args = match config::expand(args) {
        Ok(a) => a,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_INVALID;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok((artifact, path)) => match emit(&artifact, path.as_ref(), out) {
            Ok(()) => EXIT_OK,
            Err(f) => report(&f, err),
        },
        Err(f) => report(&f, err),
    }
}

fn report(f: &Failure, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {}", f.message());
    f.code()
}

fn emit(artifact: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Outcome<()> {
    match path {
        Some(p) => std::fs::write(p, artifact).map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(artifact.as_bytes()).map_err(|e| Failure::Io(format!("cannot write output: {e}"))),
    }
}

fn dispatch(cmd: &Command) -> Outcome<(String, Option<PathBuf>)> {
    let (text, common) = match cmd {
        Command::Profile(a) => (profile(a)?, &a.common),
        Command::Tangency(a) => (tangency(a)?, &a.common),
        Command::Classify(a) => (classify(a)?, &a.common),
        Command::Measure(a) => (measure(a)?, &a.common),
        Command::Solve(a) => (solve(a)?, &a.common),
        Command::Sweep(a) => (sweep(a)?, &a.common),
        Command::Plot(a) => (plot(a)?, &a.common),
    };
    Ok((text, common.out.clone()))
}

fn check_common(c: &Common) -> Outcome<()> {
    if !(c.tol > 0.0 && c.tol.is_finite()) {
        return Err(Failure::Invalid(format!("--tol must be positive, got {}", c.tol)));
    }
    if c.threads == Some(0) {
        return Err(Failure::Invalid("--threads must be at least 1".into()));
    }
    Ok(())
}

fn format_of(c: &Common, default: Format, allowed: &[Format], command: &str) -> Outcome<Format> {
    let f = c.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(Failure::Invalid(format!("{command} cannot write {f:?} output").to_lowercase()));
    }
    Ok(f)
}

fn family(regime: Option<&str>, h: f64, a: f64) -> Outcome<FamilyParams> {
    let fp = match regime {
        Some(r) => FamilyParams::new(r.parse::<Regime>()?, h, a)?,
        None if h == 1.0 => FamilyParams::new(Regime::EqualOne, h, a)?,
        None => FamilyParams::from_curvature(h, a)?,
    };
    Ok(fp)
}

fn family_of(f: &FamilyArgs) -> Outcome<FamilyParams> {
    family(f.regime.as_deref(), f.h, f.a)
}

fn document(command: &str, body: Value) -> String {
    let mut doc = json!({ "schema_version": records::SCHEMA_VERSION, "command": command });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

/// `[−2, 2]`, or two periods from 0 for periodic families.
fn default_range(fp: &FamilyParams) -> (f64, f64) {
    match fp.period() {
        Some(p) => (0.0, 2.0 * p),
        None => (-2.0, 2.0),
    }
}

fn range_of(fp: &FamilyParams, s_min: Option<f64>, s_max: Option<f64>) -> Outcome<(f64, f64)> {
    let (lo, hi) = default_range(fp);
    let (lo, hi) = (s_min.unwrap_or(lo), s_max.unwrap_or(hi));
    if !(lo < hi) {
        return Err(Failure::Invalid(format!("need --s-min < --s-max, got [{lo}, {hi}]")));
    }
    Ok((lo, hi))
}

fn profile(a: &ProfileArgs) -> Outcome<String> {
    check_common(&a.common)?;
    let format = format_of(&a.common, Format::Csv, &[Format::Csv, Format::Json, Format::Svg], "profile")?;
    if format == Format::Svg {
        return plot(a);
    }
    let fp = family_of(&a.family)?;
    let (lo, hi) = range_of(&fp, a.s_min, a.s_max)?;
    if a.n < 2 {
        return Err(Failure::Invalid(format!("--n must be at least 2, got {}", a.n)));
    }
    let samples = profile_polyline(&fp, lo, hi, a.n, a.common.tol)?;
    Ok(match format {
        Format::Csv => records::profile_csv(&samples),
        _ => document(
            "profile",
            json!({
                "family": FamilyRecord::from(&fp),
                "samples": samples.iter().map(SampleRecord::from).collect::<Vec<_>>(),
            }),
        ),
    })
}

fn tangency(a: &TangencyArgs) -> Outcome<String> {
    check_common(&a.common)?;
    let format = format_of(&a.common, Format::Json, &[Format::Csv, Format::Json], "tangency")?;
    let fp = family_of(&a.family)?;
    let window = match (a.s_min, a.s_max) {
        (None, None) => canonical_window(&fp),
        (lo, hi) => Window::new(lo.unwrap_or(f64::NEG_INFINITY), hi.unwrap_or(f64::INFINITY))?,
    };
    let q = Quadrature::new(a.common.tol)?;
    let ts = admissible_tangencies_with(&fp, window, &q)?;
    Ok(match format {
        Format::Csv => records::tangency_csv(&ts),
        _ => document(
            "tangency",
            json!({
                "family": FamilyRecord::from(&fp),
                "window": [finite_or_null(window.lo), finite_or_null(window.hi)],
                "roots": algebraic_roots(&fp, window),
                "tangencies": ts.iter().map(TangencyRecord::from).collect::<Vec<_>>(),
            }),
        ),
    })
}

fn span_label(k: SpanKind) -> &'static str {
    match k {
        SpanKind::Single => "single",
        SpanKind::FromOuter => "from-outer",
        SpanKind::FromInner => "from-inner",
    }
}

fn classify(a: &FamilyOnly) -> Outcome<String> {
    check_common(&a.common)?;
    format_of(&a.common, Format::Json, &[Format::Json], "classify")?;
    let fp = family_of(&a.family)?;
    let q = Quadrature::new(a.common.tol)?;
    let spans: Vec<Value> = tube_spans(&fp, &q)
        .unwrap_or_default()
        .iter()
        .map(|sp| {
            json!({
                "kind": span_label(sp.kind),
                "s": [sp.lower.s, sp.upper.s],
                "heights": [sp.lower.height, sp.upper.height],
                "ratio": sp.ratio(),
            })
        })
        .collect();
    Ok(document(
        "classify",
        json!({
            "family": FamilyRecord::from(&fp),
            "kind": classify_family(&fp).label(),
            "discriminant": discriminant(&fp),
            "period": fp.period(),
            "admissibility": admissibility_label(&slab_admissibility(&fp)),
            "spans": spans,
        }),
    ))
}

fn positive(name: &str, v: Option<f64>) -> Outcome<f64> {
    match v {
        Some(x) if x > 0.0 && x.is_finite() => Ok(x),
        Some(x) => Err(Failure::Invalid(format!("--{name} must be positive, got {x}"))),
        None => Err(Failure::Invalid(format!("--{name} is required for this shape"))),
    }
}

fn measure(m: &MeasureArgs) -> Outcome<String> {
    check_common(&m.common)?;
    format_of(&m.common, Format::Json, &[Format::Json], "measure")?;
    let tol = m.common.tol;
    let regions: Vec<Value> = match m.shape {
        Shape::Tube => {
            let (Some(h), Some(a)) = (m.h, m.a) else {
                return Err(Failure::Invalid("tube needs --H and --a".into()));
            };
            let fp = family(m.regime.as_deref(), h, a)?;
            let q = Quadrature::new(tol)?;
            let spans =
                tube_spans(&fp, &q).map_err(|r| Failure::Invalid(format!("family bounds no tube: {}", r.code())))?;
            let mut out = Vec::new();
            for sp in spans {
                let lam = horoslab::profile::lambda_between(&fp, 0.0, sp.lower.s, &q)?;
                let contour = MeridianContour::tube(fp, sp.lower.s, sp.upper.s, lam, &q)?;
                let arc = Arc::Profile { fp, s_from: sp.lower.s, s_to: sp.upper.s, lambda_from: lam };
                out.push(json!({
                    "span": span_label(sp.kind),
                    "s": [sp.lower.s, sp.upper.s],
                    "heights": [sp.lower.height, sp.upper.height],
                    "area_natural": area_natural(&fp, sp.lower.s, sp.upper.s, tol)?,
                    "area_cartesian": area_cartesian(&arc, tol)?,
                    "cap_area": contour.cap_area(),
                    "volume": volume_contour(&contour, tol)?,
                }));
            }
            out
        }
        shape => {
            let c = positive("center", m.center)?;
            let r = positive("radius", m.radius)?;
            let contour = match shape {
                Shape::LowerDome => MeridianContour::lower_dome(c, r),
                Shape::UpperDome if r < c => MeridianContour::upper_dome(c, r),
                Shape::Sphere if r < c => MeridianContour::sphere(c, r),
                _ => return Err(Failure::Invalid(format!("--radius must be below --center, got {r} >= {c}"))),
            };
            vec![json!({
                "area": contour.free_area(tol)?,
                "cap_area": contour.cap_area(),
                "volume": volume_contour(&contour, tol)?,
            })]
        }
    };
    let shape = match m.shape {
        Shape::Tube => "tube",
        Shape::LowerDome => "lower-dome",
        Shape::UpperDome => "upper-dome",
        Shape::Sphere => "sphere",
    };
    Ok(document("measure", json!({ "shape": shape, "regions": regions })))
}

fn slab_of(s: &SlabArgs) -> Outcome<SlabSpec> {
    if !(s.c1 < s.c2) {
        return Err(Failure::Invalid(format!("need --c1 < --c2, got {} and {}", s.c1, s.c2)));
    }
    if s.radius_grid < 2 {
        return Err(Failure::Invalid(format!("--radius-grid must be at least 2, got {}", s.radius_grid)));
    }
    Ok(SlabSpec::new(s.c1, s.c2)?)
}

fn options(s: &SlabArgs, c: &Common) -> SweepOptions {
    SweepOptions { tol: c.tol, dome_grid: s.radius_grid, sphere_grid: s.radius_grid, threads: c.threads }
}

fn assumptions() -> Value {
    json!({
        "rotational": true,
        "connected": true,
        "families": ["tube", "lower-dome", "upper-dome", "floating-sphere"],
    })
}

fn iso_record(v: f64, cands: &[Candidate]) -> Option<IsoPointRecord> {
    let winner = cands.first()?;
    Some(IsoPointRecord {
        volume: v,
        min_area: winner.free_area,
        winner: winner.into(),
        candidates: cands.iter().map(CandidateRecord::from).collect(),
    })
}

fn solve(a: &SolveArgs) -> Outcome<String> {
    check_common(&a.common)?;
    format_of(&a.common, Format::Json, &[Format::Json], "solve")?;
    let slab = slab_of(&a.slab)?;
    let found = sweep_candidates(&slab, &default_h_grid(), &[a.volume], &options(&a.slab, &a.common))?;
    let (v, cands) = &found[0];
    let point = iso_record(*v, cands).ok_or(Error::NoCandidate { volume: *v })?;
    Ok(document(
        "solve",
        json!({
            "slab": records::SlabRecord { c1: slab.c1, c2: slab.c2 },
            "volume": v,
            "assumptions": assumptions(),
            "winner": point.winner,
            "candidates": point.candidates,
        }),
    ))
}

fn volume_grid(a: &SweepArgs) -> Outcome<Vec<f64>> {
    if let Some(v) = &a.volumes {
        if v.is_empty() {
            return Err(Failure::Invalid("--volumes is empty".into()));
        }
        return Ok(v.clone());
    }
    if !(a.v_min > 0.0 && a.v_min < a.v_max && a.v_max.is_finite()) {
        return Err(Failure::Invalid(format!("need 0 < --v-min < --v-max, got {} and {}", a.v_min, a.v_max)));
    }
    if a.v_count < 2 {
        return Err(Failure::Invalid(format!("--v-count must be at least 2, got {}", a.v_count)));
    }
    let (lo, hi) = (a.v_min.ln(), a.v_max.ln());
    let n = a.v_count - 1;
    Ok((0..=n).map(|i| if i == n { a.v_max } else { (lo + (hi - lo) * i as f64 / n as f64).exp() }).collect())
}

fn class_label(c: &Candidate) -> &'static str {
    c.theorem_class().map(|t| t.label()).unwrap_or(c.kind_label())
}

fn sweep(a: &SweepArgs) -> Outcome<String> {
    check_common(&a.common)?;
    let format = format_of(&a.common, Format::Json, &[Format::Csv, Format::Json, Format::Svg], "sweep")?;
    let slab = slab_of(&a.slab)?;
    let grid = volume_grid(a)?;
    let found = sweep_candidates(&slab, &default_h_grid(), &grid, &options(&a.slab, &a.common))?;
    if found.iter().all(|(_, c)| c.is_empty()) {
        return Err(Failure::Lib(Error::NoCandidate { volume: grid[0] }));
    }
    let points: Vec<IsoPointRecord> = found.iter().filter_map(|(v, c)| iso_record(*v, c)).collect();
    Ok(match format {
        Format::Csv => records::sweep_csv(&points),
        Format::Json => {
            let missing: Vec<f64> = found.iter().filter(|(_, c)| c.is_empty()).map(|(v, _)| *v).collect();
            document(
                "sweep",
                json!({
                    "slab": records::SlabRecord { c1: slab.c1, c2: slab.c2 },
                    "assumptions": assumptions(),
                    "points": points,
                    "unreached": missing,
                }),
            )
        }
        Format::Svg => {
            let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
            for (v, cands) in &found {
                // best area per class at this volume
                let mut seen: Vec<&str> = Vec::new();
                for c in cands {
                    let label = class_label(c);
                    if seen.contains(&label) {
                        continue;
                    }
                    seen.push(label);
                    match series.iter_mut().find(|(n, _)| n == label) {
                        Some((_, pts)) => pts.push((*v, c.free_area)),
                        None => series.push((label.to_string(), vec![(*v, c.free_area)])),
                    }
                }
            }
            series.sort_by(|x, y| x.0.cmp(&y.0));
            let winners: Vec<(String, f64, f64)> = found
                .iter()
                .filter_map(|(v, c)| c.first().map(|w| (class_label(w).to_string(), *v, w.free_area)))
                .collect();
            let title = format!("least area against volume, slab [{}, {}]", num(slab.c1), num(slab.c2));
            svg::sweep(&series, &winners, &title)
        }
    })
}

fn plot(a: &PlotArgs) -> Outcome<String> {
    check_common(&a.common)?;
    format_of(&a.common, Format::Svg, &[Format::Svg], "plot")?;
    let fp = family_of(&a.family)?;
    let (lo, hi) = range_of(&fp, a.s_min, a.s_max)?;
    if a.n < 2 {
        return Err(Failure::Invalid(format!("--n must be at least 2, got {}", a.n)));
    }
    let samples = profile_polyline(&fp, lo, hi, a.n, a.common.tol)?;
    let q = Quadrature::new(a.common.tol)?;
    let ts = admissible_tangencies_with(&fp, Window::new(lo, hi)?, &q)?;
    let title = format!("profile curve, H = {}, a = {}", num(fp.h()), num(fp.a()));
    Ok(svg::profile(&samples, &ts, &title))
}
