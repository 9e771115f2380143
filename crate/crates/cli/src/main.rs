//! Command-line front end: sample superquadric point clouds, measure them,
//! and run the timing grid.
//!
//! Exit codes: 0 success, 2 validation or input error, 3 I/O error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use nalgebra::Vector3;

use superq::bench::{run_bench, write_csv, BenchGrid};
use superq::io::{read_cloud_file, write_cloud, write_cloud_file, ExportFormat};
use superq::metrics::{cloud_distance, nn_spacing_stats, MetricsReport};
use superq::params::{validate, SamplingConfig, SuperquadricKind, SuperquadricParams};
use superq::surface::naive_sample;
use superq::{inside_outside, normals, surface};

mod keyval;

#[derive(Parser)]
#[command(
    name = "superq",
    about = "Close-to-uniform point clouds with normals from superellipsoids and superparaboloids",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a surface and write the point cloud
    Sample(SampleArgs),
    /// Spacing and fidelity metrics of one or two point clouds
    Metrics(MetricsArgs),
    /// Timing grid over shape exponent and spacing; writes CSV
    Bench(BenchArgs),
}

#[derive(Args, Clone, Default)]
struct ShapeFlags {
    /// Surface kind: se (superellipsoid) or sp (superparaboloid)
    #[arg(long)]
    kind: Option<String>,
    /// Scales a1,a2,a3
    #[arg(long, short = 'a')]
    a: Option<String>,
    /// Shape exponents eps1,eps2
    #[arg(long)]
    eps: Option<String>,
    /// ZYZ Euler angles theta,phi,psi (radians unless --degrees)
    #[arg(long, allow_hyphen_values = true)]
    euler: Option<String>,
    /// Position px,py,pz
    #[arg(long, allow_hyphen_values = true)]
    pos: Option<String>,
    /// Taper factors kx,ky in [-1, 1]
    #[arg(long, allow_hyphen_values = true)]
    taper: Option<String>,
    /// Bend circle radius (>= a3); omit for no bending
    #[arg(long, allow_negative_numbers = true)]
    bend: Option<f64>,
    /// Interpret --euler in degrees
    #[arg(long)]
    degrees: bool,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    shape: ShapeFlags,
    /// Target arc spacing D (model units)
    #[arg(long, short = 'd')]
    d: Option<f64>,
    /// Use the naive parameter-grid sampler with an NxM grid
    #[arg(long)]
    naive: Option<String>,
    /// Output format: ply, obj, or csv (default: from file extension, else ply)
    #[arg(long)]
    format: Option<String>,
    /// Output file (stdout when omitted)
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
    /// key=value file supplying defaults for any of the flags above
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct MetricsArgs {
    /// One or two cloud files (ply, obj, or csv)
    #[arg(required = true, num_args = 1..=2)]
    clouds: Vec<PathBuf>,
    /// key=value shape file; enables the implicit-residual column
    /// (the cloud is taken to be in the canonical frame)
    #[arg(long)]
    params: Option<PathBuf>,
    /// Emit CSV instead of aligned text
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Surface kind: se or sp
    #[arg(long, default_value = "se")]
    kind: String,
    /// Comma-separated shape exponents (default: 0.1,0.3,...,1.9)
    #[arg(long)]
    eps_grid: Option<String>,
    /// Comma-separated spacings (default: 0.01,0.02,0.05,0.1,0.2)
    #[arg(long)]
    d_grid: Option<String>,
    /// Repetitions per cell (median is reported)
    #[arg(long)]
    reps: Option<usize>,
    /// Use the full-size grid: eps 0.1..2.0 step 0.05, D 0.005..0.2
    /// step 0.001, 1000 repetitions. Takes hours.
    #[arg(long)]
    full_paper_grid: bool,
    /// Output CSV file (stdout when omitted)
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

enum CliError {
    /// Bad flags, invalid parameters, unreadable or degenerate input.
    Input(String),
    /// Filesystem failure.
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Io(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(args) => cmd_sample(args),
        Command::Metrics(args) => cmd_metrics(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

fn parse_pair(name: &str, text: &str) -> Result<[f64; 2], CliError> {
    parse_floats(name, text, 2).map(|v| [v[0], v[1]])
}

fn parse_triple(name: &str, text: &str) -> Result<[f64; 3], CliError> {
    parse_floats(name, text, 3).map(|v| [v[0], v[1], v[2]])
}

fn parse_floats(name: &str, text: &str, n: usize) -> Result<Vec<f64>, CliError> {
    let values: Result<Vec<f64>, _> = text.split(',').map(|t| t.trim().parse()).collect();
    match values {
        Ok(v) if v.len() == n => Ok(v),
        _ => Err(CliError::Input(format!(
            "--{name} expects {n} comma-separated numbers, got {text:?}"
        ))),
    }
}

fn parse_kind(text: &str) -> Result<SuperquadricKind, CliError> {
    match text.to_ascii_lowercase().as_str() {
        "se" | "superellipsoid" => Ok(SuperquadricKind::Superellipsoid),
        "sp" | "superparaboloid" => Ok(SuperquadricKind::Superparaboloid),
        other => Err(CliError::Input(format!(
            "--kind must be se or sp, got {other:?}"
        ))),
    }
}

/// Resolve shape flags (with optional key=value defaults) into parameters.
fn build_params(flags: &ShapeFlags) -> Result<SuperquadricParams, CliError> {
    let kind = parse_kind(flags.kind.as_deref().unwrap_or("se"))?;
    let a = match &flags.a {
        Some(text) => parse_triple("a", text)?,
        None => [1.0, 1.0, 1.0],
    };
    let eps = match &flags.eps {
        Some(text) => parse_pair("eps", text)?,
        None => [1.0, 1.0],
    };
    let mut euler = match &flags.euler {
        Some(text) => parse_triple("euler", text)?,
        None => [0.0; 3],
    };
    if flags.degrees {
        for v in &mut euler {
            *v = v.to_radians();
        }
    }
    let pos = match &flags.pos {
        Some(text) => parse_triple("pos", text)?,
        None => [0.0; 3],
    };
    let taper = match &flags.taper {
        Some(text) => parse_pair("taper", text)?,
        None => [0.0, 0.0],
    };

    let mut params = match kind {
        SuperquadricKind::Superellipsoid => {
            SuperquadricParams::superellipsoid(a[0], a[1], a[2], eps[0], eps[1])
        }
        SuperquadricKind::Superparaboloid => {
            SuperquadricParams::superparaboloid(a[0], a[1], a[2], eps[0], eps[1])
        }
    }
    .with_pose(
        (euler[0], euler[1], euler[2]),
        Vector3::new(pos[0], pos[1], pos[2]),
    )
    .with_taper(taper[0], taper[1]);
    if let Some(k) = flags.bend {
        params = params.with_bend(k);
    }
    Ok(params)
}

fn cmd_sample(mut args: SampleArgs) -> Result<(), CliError> {
    if let Some(path) = &args.config {
        let defaults = keyval::read_file(path).map_err(CliError::Input)?;
        keyval::apply_sample_defaults(&defaults, &mut args.shape, &mut args.d, &mut args.naive)
            .map_err(CliError::Input)?;
    }

    let params = build_params(&args.shape)?;
    let valid = validate(&params).map_err(|errs| {
        CliError::Input(
            errs.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("\n       "),
        )
    })?;

    let start = Instant::now();
    let mut cloud = match &args.naive {
        Some(grid) => {
            let (n_eta, n_omega) = parse_grid(grid)?;
            naive_sample(&valid, n_eta, n_omega)
        }
        None => {
            let spacing = args.d.unwrap_or(0.05);
            let config =
                SamplingConfig::new(spacing).map_err(|e| CliError::Input(e.to_string()))?;
            surface::sample_surface(&valid, &config).map_err(|e| CliError::Input(e.to_string()))?
        }
    };
    normals::fill_normals(&mut cloud).map_err(|e| CliError::Input(e.to_string()))?;
    let cloud =
        superq::deform::apply_pipeline(&cloud).map_err(|e| CliError::Input(e.to_string()))?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let format = resolve_format(args.format.as_deref(), args.output.as_deref())?;
    let normals = cloud.normals.as_ref().expect("normals filled above");
    match &args.output {
        Some(path) => write_cloud_file(path, &cloud.points, normals, format)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => {
            let stdout = io::stdout();
            write_cloud(
                BufWriter::new(stdout.lock()),
                &cloud.points,
                normals,
                format,
            )
            .map_err(|e| CliError::Io(e.to_string()))?;
        }
    }

    eprintln!("sampled {} points in {:.3} ms", cloud.len(), elapsed_ms);
    Ok(())
}

fn parse_grid(text: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = text.split(['x', 'X']).collect();
    if parts.len() == 2 {
        if let (Ok(n), Ok(m)) = (parts[0].trim().parse(), parts[1].trim().parse()) {
            if n >= 2 && m >= 2 {
                return Ok((n, m));
            }
        }
    }
    Err(CliError::Input(format!(
        "--naive expects NxM with N, M >= 2, got {text:?}"
    )))
}

fn resolve_format(flag: Option<&str>, output: Option<&Path>) -> Result<ExportFormat, CliError> {
    if let Some(name) = flag {
        return ExportFormat::from_name(name).ok_or_else(|| {
            CliError::Input(format!("--format must be ply, obj, or csv, got {name:?}"))
        });
    }
    Ok(output
        .and_then(ExportFormat::from_path)
        .unwrap_or(ExportFormat::PlyAscii))
}

fn cmd_metrics(args: MetricsArgs) -> Result<(), CliError> {
    let shape = match &args.params {
        Some(path) => {
            let map = keyval::read_file(path).map_err(CliError::Input)?;
            let mut flags = ShapeFlags::default();
            keyval::apply_sample_defaults(&map, &mut flags, &mut None, &mut None)
                .map_err(CliError::Input)?;
            Some(build_params(&flags)?)
        }
        None => None,
    };

    let mut reports: Vec<(String, MetricsReport)> = Vec::new();
    let mut clouds = Vec::new();
    for path in &args.clouds {
        let (points, _) = read_cloud_file(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let mut report = nn_spacing_stats(&points)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        if let Some(params) = &shape {
            report.implicit_residual_max = Some(
                points
                    .iter()
                    .map(|p| (inside_outside(p, params) - 1.0).abs())
                    .fold(0.0, f64::max),
            );
        }
        reports.push((path.display().to_string(), report));
        clouds.push(points);
    }

    let distance = if clouds.len() == 2 {
        Some(cloud_distance(&clouds[0], &clouds[1]).map_err(|e| CliError::Input(e.to_string()))?)
    } else {
        None
    };

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let write_result = if args.csv {
        write_metrics_csv(&mut out, &reports, distance.as_ref())
    } else {
        write_metrics_text(&mut out, &reports, distance.as_ref())
    };
    write_result.map_err(|e| CliError::Io(e.to_string()))
}

fn fmt_residual(r: Option<f64>) -> String {
    match r {
        Some(v) => format!("{v:.3e}"),
        None => "-".to_string(),
    }
}

fn write_metrics_text(
    out: &mut impl Write,
    reports: &[(String, MetricsReport)],
    distance: Option<&superq::CloudDistance>,
) -> io::Result<()> {
    for (name, r) in reports {
        writeln!(out, "{name}")?;
        writeln!(out, "  points                {}", r.point_count)?;
        writeln!(out, "  nn_mean               {:.9}", r.nn_mean)?;
        writeln!(out, "  nn_cv                 {:.6}", r.nn_cv)?;
        writeln!(out, "  nn_max_min_ratio      {:.6}", r.nn_max_min_ratio)?;
        writeln!(
            out,
            "  implicit_residual_max {}",
            fmt_residual(r.implicit_residual_max)
        )?;
    }
    if let Some(d) = distance {
        writeln!(out, "cloud_distance")?;
        writeln!(out, "  mean_a_to_b           {:.9}", d.mean_ab)?;
        writeln!(out, "  mean_b_to_a           {:.9}", d.mean_ba)?;
        writeln!(out, "  symmetric             {:.9}", d.symmetric)?;
    }
    Ok(())
}

fn write_metrics_csv(
    out: &mut impl Write,
    reports: &[(String, MetricsReport)],
    distance: Option<&superq::CloudDistance>,
) -> io::Result<()> {
    writeln!(
        out,
        "file,points,nn_mean,nn_cv,nn_max_min_ratio,implicit_residual_max"
    )?;
    for (name, r) in reports {
        writeln!(
            out,
            "{name},{},{},{},{},{}",
            r.point_count,
            r.nn_mean,
            r.nn_cv,
            r.nn_max_min_ratio,
            r.implicit_residual_max
                .map(|v| v.to_string())
                .unwrap_or_default()
        )?;
    }
    if let Some(d) = distance {
        writeln!(
            out,
            "cloud_distance,,{},{},{},",
            d.mean_ab, d.mean_ba, d.symmetric
        )?;
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let kind = parse_kind(&args.kind)?;
    let mut grid = if args.full_paper_grid {
        BenchGrid::full(kind)
    } else {
        BenchGrid::desk(kind)
    };
    if let Some(text) = &args.eps_grid {
        grid.eps_values = parse_float_list("eps-grid", text)?;
    }
    if let Some(text) = &args.d_grid {
        grid.spacing_values = parse_float_list("d-grid", text)?;
    }
    if let Some(reps) = args.reps {
        if reps == 0 {
            return Err(CliError::Input("--reps must be positive".into()));
        }
        grid.reps = reps;
    }

    let outcome = run_bench(&grid);
    for failure in &outcome.failures {
        eprintln!(
            "cell eps={} D={} failed: {}",
            failure.eps, failure.spacing, failure.error
        );
    }

    match &args.output {
        Some(path) => {
            let file =
                File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            write_csv(&outcome.records, BufWriter::new(file))
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        }
        None => {
            let stdout = io::stdout();
            write_csv(&outcome.records, stdout.lock()).map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    Ok(())
}

fn parse_float_list(name: &str, text: &str) -> Result<Vec<f64>, CliError> {
    let values: Result<Vec<f64>, _> = text.split(',').map(|t| t.trim().parse()).collect();
    match values {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(CliError::Input(format!(
            "--{name} expects comma-separated numbers, got {text:?}"
        ))),
    }
}
