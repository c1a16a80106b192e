//! `pencil`: spectra, asymptotic curves, c-sweeps, zero-distance studies and
//! the theorem checks of `pencil-spectrum`, written as CSV or JSON.
//!
//! Exit codes: 0 success, 1 failed check or I/O error, 2 invalid arguments,
//! 3 the root finder did not converge.

mod output;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pencil_spectrum::asymptotics::{curve_samples, lambda_c};
use pencil_spectrum::parallel::map_slice;
use pencil_spectrum::verify::{zero_distance_row, ZeroDistanceRow};
use pencil_spectrum::{
    compute_spectrum, run_suite, PencilSpec, PrecisionMode, SolverOptions, Spectrum, Suite, SuiteParams,
};
use serde::Serialize;
use thiserror::Error;

use output::{csv_writer, num, open_out, spectrum_header, spectrum_record, spectrum_rows, write_json, SpectrumDoc};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Pencil(#[from] pencil_spectrum::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("root finder did not converge for {0}")]
    NotConverged(String),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Pencil(_) => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::ChecksFailed(_) => 1,
            CliError::NotConverged(_) => 3,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "pencil",
    version,
    about = "Spectra of the indefinite tridiagonal pencil H_{N;c} - lambda diag(1 x m, -1 x n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues with multiplicities and residuals
    Spectrum(SpectrumArgs),
    /// Samples of the bounding curve Lambda_0 (c = 0) or Lambda_c (0 < c < 2)
    Curve(CurveArgs),
    /// One spectrum file per value of c, plus a manifest
    Sweep(SweepArgs),
    /// Distance of the spectrum to 0 against its lower bound delta
    ZeroDistance(ZeroDistanceArgs),
    /// Run theorem checks and report
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PrecisionArg {
    Auto,
    Double,
    DoubleDouble,
}

#[derive(Args, Clone, Copy)]
struct SolverArgs {
    /// Working precision of the root finder
    #[arg(long, value_enum, default_value = "auto")]
    precision: PrecisionArg,
    /// Maximum number of Aberth sweeps
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
    /// Run on the calling thread only
    #[arg(long)]
    sequential: bool,
}

impl SolverArgs {
    fn options(&self) -> SolverOptions {
        SolverOptions {
            precision: match self.precision {
                PrecisionArg::Auto => PrecisionMode::Auto,
                PrecisionArg::Double => PrecisionMode::Double,
                PrecisionArg::DoubleDouble => PrecisionMode::DoubleDouble,
            },
            max_iter: self.max_iter,
            parallel: !self.sequential,
            ..SolverOptions::default()
        }
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c: f64,
    /// Add the columns re_scaled = Re(lambda) and im_scaled = (m + n) Im(lambda)
    #[arg(long)]
    scaled: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file (standard output if absent)
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, allow_negative_numbers = true)]
    c: f64,
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Block size; the pencil is m = n
    #[arg(long)]
    m: usize,
    #[arg(long, allow_negative_numbers = true)]
    c_from: f64,
    #[arg(long, allow_negative_numbers = true)]
    c_to: f64,
    #[arg(long)]
    steps: usize,
    #[arg(long)]
    out_dir: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct ZeroDistanceArgs {
    /// Block sizes for a sweep over c (n defaults to m)
    #[arg(long, conflicts_with = "m_range")]
    m: Option<usize>,
    #[arg(long, requires = "m")]
    n: Option<usize>,
    /// from:to:step, inclusive
    #[arg(long, requires = "m", conflicts_with = "m_range")]
    c_grid: Option<String>,
    /// from:to, inclusive; sweeps m = n at fixed --c
    #[arg(long, requires = "c")]
    m_range: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
    suite: String,
    #[arg(long, default_value_t = 100)]
    m: usize,
    /// Defaults to m
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c: f64,
    #[arg(long, value_enum, default_value = "table")]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Curve(a) => cmd_curve(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::ZeroDistance(a) => cmd_zero_distance(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pencil: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn describe(spec: &PencilSpec) -> String {
    format!("(m, n, c) = ({}, {}, {})", spec.m(), spec.n(), spec.c())
}

fn check_converged(spectrum: &Spectrum) -> CliResult<()> {
    if spectrum.converged {
        Ok(())
    } else {
        Err(CliError::NotConverged(describe(&spectrum.spec)))
    }
}

fn cmd_spectrum(a: SpectrumArgs) -> CliResult<()> {
    let spec = PencilSpec::new(a.m, a.n, a.c)?;
    let spectrum = compute_spectrum(&spec, &a.solver.options())?;
    let out = open_out(a.out.as_deref())?;
    match a.format {
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(spectrum_header(a.scaled))?;
            for row in spectrum_rows(&spectrum) {
                w.write_record(spectrum_record(&row, a.scaled))?;
            }
            w.flush()?;
        }
        Format::Json => write_json(out, &SpectrumDoc::new(&spectrum))?,
    }
    check_converged(&spectrum)
}

#[derive(Serialize)]
struct CurveRow {
    u: f64,
    lambda: f64,
}

fn cmd_curve(a: CurveArgs) -> CliResult<()> {
    let samples = curve_samples(a.c, a.samples)?;
    let out = open_out(a.out.as_deref())?;
    match a.format {
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["u", "lambda"])?;
            for s in &samples {
                w.write_record([num(s.u), num(s.lambda_value)])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rows: Vec<CurveRow> = samples
                .iter()
                .map(|s| CurveRow {
                    u: s.u,
                    lambda: s.lambda_value,
                })
                .collect();
            write_json(out, &rows)?;
        }
    }
    Ok(())
}

const C_RANGE: (f64, f64) = (0.0, 2.05);

fn in_c_range(c: f64) -> bool {
    (C_RANGE.0..=C_RANGE.1).contains(&c)
}

#[derive(Serialize)]
struct FrameEntry {
    index: usize,
    c: f64,
    file: String,
    eigenvalues: usize,
    converged: bool,
}

#[derive(Serialize)]
struct Manifest {
    m: usize,
    n: usize,
    c_from: f64,
    c_to: f64,
    steps: usize,
    columns: Vec<&'static str>,
    frames: Vec<FrameEntry>,
}

fn sweep_values(from: f64, to: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![from];
    }
    (0..steps)
        .map(|k| {
            if k + 1 == steps {
                to
            } else {
                from + (to - from) * k as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

fn cmd_sweep(a: SweepArgs) -> CliResult<()> {
    if !in_c_range(a.c_from) || !in_c_range(a.c_to) {
        return Err(CliError::Usage(format!(
            "c range must lie in [{}, {}]",
            C_RANGE.0, C_RANGE.1
        )));
    }
    if a.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    let opts = a.solver.options();
    let specs = sweep_values(a.c_from, a.c_to, a.steps)
        .into_iter()
        .map(|c| PencilSpec::new(a.m, a.m, c))
        .collect::<Result<Vec<_>, _>>()?;
    let inner = SolverOptions {
        parallel: false,
        ..opts
    };
    let spectra = map_slice(&specs, opts.parallel, |s| compute_spectrum(s, &inner))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;

    fs::create_dir_all(&a.out_dir)?;
    let width = a.steps.saturating_sub(1).to_string().len().max(4);
    let mut columns = spectrum_header(true);
    columns.push("im_bound");
    let mut frames = Vec::with_capacity(spectra.len());
    for (index, spectrum) in spectra.iter().enumerate() {
        let file = format!("frame_{index:0width$}.csv");
        write_frame(&a.out_dir.join(&file), spectrum, &columns)?;
        frames.push(FrameEntry {
            index,
            c: spectrum.spec.c(),
            file,
            eigenvalues: spectrum.eigenvalues.len(),
            converged: spectrum.converged,
        });
    }
    let manifest = Manifest {
        m: a.m,
        n: a.m,
        c_from: a.c_from,
        c_to: a.c_to,
        steps: a.steps,
        columns,
        frames,
    };
    write_json(fs::File::create(a.out_dir.join("manifest.json"))?, &manifest)?;
    match spectra.iter().find(|s| !s.converged) {
        Some(s) => Err(CliError::NotConverged(describe(&s.spec))),
        None => Ok(()),
    }
}

/// The spectrum columns plus `im_bound = Lambda_c(|Re|) / (2m)` where
/// `0 < c < 2` and `0 < |Re| < 2 - c`, empty elsewhere.
fn write_frame(path: &Path, spectrum: &Spectrum, columns: &[&str]) -> CliResult<()> {
    let c = spectrum.spec.c();
    let size = spectrum.spec.size() as f64;
    let mut w = csv_writer(io::BufWriter::new(fs::File::create(path)?));
    w.write_record(columns)?;
    for row in spectrum_rows(spectrum) {
        let mut rec = spectrum_record(&row, true);
        let u = row.re.abs();
        let bound = if c > 0.0 && c < 2.0 && u > 0.0 && u < 2.0 - c {
            num(lambda_c(c, u)? / size)
        } else {
            String::new()
        };
        rec.push(bound);
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}

fn parse_parts(text: &str, count: usize, what: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || {
        CliError::Usage(format!(
            "{what} must look like {}",
            if count == 3 { "from:to:step" } else { "from:to" }
        ))
    };
    if parts.len() != count {
        return Err(bad());
    }
    parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect()
}

fn parse_c_grid(text: &str) -> CliResult<Vec<f64>> {
    let v = parse_parts(text, 3, "--c-grid")?;
    let (from, to, step) = (v[0], v[1], v[2]);
    if !(step > 0.0) || to < from || !in_c_range(from) || !in_c_range(to) {
        return Err(CliError::Usage(format!(
            "--c-grid needs step > 0 and {} <= from <= to <= {}",
            C_RANGE.0, C_RANGE.1
        )));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| (from + step * k as f64).min(to)).collect())
}

fn parse_m_range(text: &str) -> CliResult<(usize, usize)> {
    let (from, to) = text
        .split_once(':')
        .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
        .ok_or_else(|| CliError::Usage("--m-range must look like from:to".into()))?;
    if from == 0 || to < from {
        return Err(CliError::Usage("--m-range needs 1 <= from <= to".into()));
    }
    Ok((from, to))
}

fn cmd_zero_distance(a: ZeroDistanceArgs) -> CliResult<()> {
    let opts = a.solver.options();
    let (label, specs) = match (&a.c_grid, &a.m_range) {
        (Some(grid), None) => {
            let m = a.m.expect("clap enforces --m with --c-grid");
            let n = a.n.unwrap_or(m);
            let specs = parse_c_grid(grid)?
                .into_iter()
                .map(|c| PencilSpec::new(m, n, c).map(|s| (c, s)))
                .collect::<Result<Vec<_>, _>>()?;
            ("c", specs)
        }
        (None, Some(range)) => {
            let c = a.c.expect("clap enforces --c with --m-range");
            let (from, to) = parse_m_range(range)?;
            let specs = (from..=to)
                .map(|m| PencilSpec::new(m, m, c).map(|s| (m as f64, s)))
                .collect::<Result<Vec<_>, _>>()?;
            ("m", specs)
        }
        _ => {
            return Err(CliError::Usage(
                "give either --m with --c-grid, or --m-range with --c".into(),
            ))
        }
    };
    let inner = SolverOptions {
        parallel: false,
        ..opts
    };
    let rows = map_slice(&specs, opts.parallel, |(p, s)| zero_distance_row(s, *p, &inner))
        .into_iter()
        .collect::<Result<Vec<ZeroDistanceRow>, _>>()?;

    let out = open_out(a.out.as_deref())?;
    match a.format {
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([label, "d", "delta"])?;
            for r in &rows {
                let p = if label == "m" {
                    (r.parameter as usize).to_string()
                } else {
                    num(r.parameter)
                };
                w.write_record([p, num(r.d), num(r.delta)])?;
            }
            w.flush()?;
        }
        Format::Json => write_json(out, &rows)?,
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> CliResult<()> {
    let suite: Suite = a.suite.parse()?;
    let params = SuiteParams {
        m: a.m,
        n: a.n.unwrap_or(a.m),
        c: a.c,
    };
    let report = run_suite(suite, params, &a.solver.options())?;
    let mut out = open_out(a.out.as_deref())?;
    match a.format {
        ReportFormat::Table => {
            out.write_all(report.to_table().as_bytes())?;
            out.flush()?;
        }
        ReportFormat::Json => write_json(out, &report)?,
    }
    match report.failed().count() {
        0 => Ok(()),
        k => Err(CliError::ChecksFailed(k)),
    }
}
