//! Command-line front end.
//!
//! ```text
//! kspace-sampler <method> [flags] --out DIR [--format csv,pbm,pgm,stats]
//!                [--seed U64] [--rebin-n K] [--window A:B]
//! ```
//!
//! Exit codes: 0 success, 2 usage or parameter error, 3 I/O error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{pattern_stats, rebin_3d};
use crate::cava::{rebin_2d, CavaParams};
use crate::error::Error;
use crate::gro::GroParams;
use crate::io::{render_order_trace, render_pgm, write_mask_pbm, write_samples_csv, write_stats, MaskMode};
use crate::mask::Window;
use crate::opra::OpraParams;
use crate::pattern::{MethodParams, SamplingPattern};
use crate::pr4d::Pr4dParams;
use crate::vista::VistaParams;

#[derive(Parser, Debug)]
#[command(name = "kspace-sampler", version, about = "Pseudo-random Cartesian k-space sampling patterns for dynamic MRI")]
struct Cli {
    #[command(subcommand)]
    method: MethodCmd,
}

#[derive(Subcommand, Debug)]
enum MethodCmd {
    /// Riesz-energy optimized ky–t sampling
    Vista(VistaArgs),
    /// Golden ratio offset ky–t sampling
    Gro(GroArgs),
    /// Golden ratio advance with retrospective frame size
    Cava(CavaArgs),
    /// Golden-angle L-shaped leaflets in ky–kz
    Opra(OpraArgs),
    /// Pseudo-radial ky–kz sampling for 4D flow
    Pr4d(Pr4dArgs),
}

#[derive(Args, Debug)]
struct Output {
    /// Output directory
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Files to emit
    #[arg(long, value_enum, value_delimiter = ',', default_value = "csv,pbm,pgm,stats")]
    format: Vec<Format>,
    /// Acquisition window for PGM renders, e.g. 1:120
    #[arg(long, value_name = "A:B", value_parser = parse_window)]
    window: Option<Window>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Pbm,
    Pgm,
    Stats,
}

fn parse_window(v: &str) -> Result<Window, String> {
    let (a, b) = v.split_once(':').ok_or("expected A:B")?;
    let a = a.trim().parse().map_err(|_| format!("bad window start {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad window end {b:?}"))?;
    Ok((a, b))
}

#[derive(Args, Debug)]
struct VistaArgs {
    /// Size of the phase-encode grid
    #[arg(long)]
    pe: Option<usize>,
    /// Number of frames
    #[arg(long)]
    fr: Option<usize>,
    /// Lines per frame
    #[arg(long = "n")]
    n: Option<usize>,
    /// Extent of variable density, 1..10
    #[arg(long = "s", allow_negative_numbers = true)]
    s: Option<f64>,
    /// Width of the high-density region (default N/6)
    #[arg(long, allow_negative_numbers = true)]
    sig: Option<f64>,
    /// Time-axis scaling (default max(N/(10n) + 0.25, 1))
    #[arg(long = "w", allow_negative_numbers = true)]
    w: Option<f64>,
    /// Norm exponent
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Maximum descent iterations
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct GroArgs {
    #[arg(long)]
    pe: Option<usize>,
    #[arg(long)]
    fr: Option<usize>,
    #[arg(long = "n")]
    n: Option<usize>,
    /// Number of encodings
    #[arg(long = "e")]
    e: Option<usize>,
    #[arg(long = "s", allow_negative_numbers = true)]
    s: Option<f64>,
    /// Width of the high-density region
    #[arg(long, allow_negative_numbers = true)]
    alph: Option<f64>,
    /// 1 for the golden fraction, >1 for tiny golden fractions
    #[arg(long)]
    tau: Option<u32>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CavaArgs {
    #[arg(long)]
    pe: Option<usize>,
    #[arg(long)]
    fr: Option<usize>,
    #[arg(long = "n")]
    n: Option<usize>,
    #[arg(long = "e")]
    e: Option<usize>,
    #[arg(long = "s", allow_negative_numbers = true)]
    s: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alph: Option<f64>,
    #[arg(long)]
    tau: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Re-bin the acquisition stream into frames of K lines
    #[arg(long, value_name = "K")]
    rebin_n: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct OpraArgs {
    /// Matrix size NY NZ
    #[arg(long, num_args = 2, value_names = ["NY", "NZ"])]
    pe: Option<Vec<usize>>,
    #[arg(long)]
    fr: Option<usize>,
    #[arg(long = "n")]
    n: Option<usize>,
    /// Samples per leaflet
    #[arg(long = "l")]
    l: Option<usize>,
    #[arg(long = "s", allow_negative_numbers = true)]
    s: Option<f64>,
    /// Aspect-ratio exponent of the high-density region
    #[arg(long, allow_negative_numbers = true)]
    ar: Option<f64>,
    /// Irrational radial shift per leaflet
    #[arg(long, allow_negative_numbers = true)]
    gs: Option<f64>,
    /// Angular jump between leaflet arms (radians)
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
    #[arg(long, value_name = "K")]
    rebin_n: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct Pr4dArgs {
    #[arg(long, num_args = 2, value_names = ["NY", "NZ"])]
    pe: Option<Vec<usize>>,
    #[arg(long)]
    fr: Option<usize>,
    #[arg(long = "n")]
    n: Option<usize>,
    #[arg(long = "e")]
    e: Option<usize>,
    #[arg(long = "s", allow_negative_numbers = true)]
    s: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    ar: Option<f64>,
    /// Irrational angular increment (fractional part used)
    #[arg(long, allow_negative_numbers = true)]
    gs: Option<f64>,
    #[arg(long, value_name = "K")]
    rebin_n: Option<usize>,
    #[command(flatten)]
    output: Output,
}

/// A fully validated invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: MethodParams,
    pub out_dir: PathBuf,
    pub formats: Vec<Format>,
    pub rebin_n: Option<usize>,
    pub window: Option<Window>,
}

impl RunConfig {
    pub fn seed(&self) -> Option<u64> {
        match &self.params {
            MethodParams::Vista(p) => Some(p.seed),
            MethodParams::Cava(p) => Some(p.seed),
            _ => None,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Clap(clap::Error),
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Clap(e) => e.exit_code().clamp(0, 255) as u8,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Clap(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(io) => CliError::Io(io.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn matrix(pe: Option<Vec<usize>>, default: (usize, usize)) -> (usize, usize) {
    match pe.as_deref() {
        Some([y, z]) => (*y, *z),
        _ => default,
    }
}

fn check_rebin(rebin_n: Option<usize>, total: usize) -> Result<(), CliError> {
    match rebin_n {
        Some(k) if k < 1 || k > total => Err(CliError::Usage(format!(
            "invalid value for --rebin-n: must lie in [1, {total}] (got {k})"
        ))),
        _ => Ok(()),
    }
}

/// Parse and validate arguments, `argv[0]` being the program name.
pub fn parse_cli<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::Clap)?;
    let (params, output, rebin_n) = match cli.method {
        MethodCmd::Vista(a) => {
            let d = VistaParams::default();
            let pe = a.pe.unwrap_or(d.pe);
            let n = a.n.unwrap_or(d.lines_per_frame);
            let base = VistaParams::for_grid(pe, a.fr.unwrap_or(d.frames), n);
            let p = VistaParams {
                s: a.s.unwrap_or(base.s),
                sigma: a.sig.unwrap_or(base.sigma),
                w: a.w.unwrap_or(base.w),
                beta: a.beta.unwrap_or(base.beta),
                max_iters: a.max_iters.unwrap_or(base.max_iters),
                seed: a.seed.unwrap_or(base.seed),
                ..base
            };
            p.validate()?;
            (MethodParams::Vista(p), a.output, None)
        }
        MethodCmd::Gro(a) => {
            let d = GroParams::default();
            let p = GroParams {
                pe: a.pe.unwrap_or(d.pe),
                frames: a.fr.unwrap_or(d.frames),
                lines_per_frame: a.n.unwrap_or(d.lines_per_frame),
                encodings: a.e.unwrap_or(d.encodings),
                s: a.s.unwrap_or(d.s),
                alpha: a.alph.unwrap_or(d.alpha),
                tau: a.tau.unwrap_or(d.tau),
            };
            p.validate()?;
            (MethodParams::Gro(p), a.output, None)
        }
        MethodCmd::Cava(a) => {
            let d = CavaParams::default();
            let p = CavaParams {
                pe: a.pe.unwrap_or(d.pe),
                frames: a.fr.unwrap_or(d.frames),
                lines_per_frame: a.n.unwrap_or(d.lines_per_frame),
                encodings: a.e.unwrap_or(d.encodings),
                s: a.s.unwrap_or(d.s),
                alpha: a.alph.unwrap_or(d.alpha),
                tau: a.tau.unwrap_or(d.tau),
                seed: a.seed.unwrap_or(d.seed),
            };
            p.validate()?;
            check_rebin(a.rebin_n, p.total())?;
            (MethodParams::Cava(p), a.output, a.rebin_n)
        }
        MethodCmd::Opra(a) => {
            let d = OpraParams::default();
            let (n_y, n_z) = matrix(a.pe, (d.n_y, d.n_z));
            let p = OpraParams {
                n_y,
                n_z,
                frames: a.fr.unwrap_or(d.frames),
                lines_per_frame: a.n.unwrap_or(d.lines_per_frame),
                leaflet_len: a.l.unwrap_or(d.leaflet_len),
                s: a.s.unwrap_or(d.s),
                gamma: a.ar.unwrap_or(d.gamma),
                radial_shift: a.gs.unwrap_or(d.radial_shift),
                phi: a.phi.unwrap_or(d.phi),
            };
            p.validate()?;
            check_rebin(a.rebin_n, p.total())?;
            (MethodParams::Opra(p), a.output, a.rebin_n)
        }
        MethodCmd::Pr4d(a) => {
            let d = Pr4dParams::default();
            let (n_y, n_z) = matrix(a.pe, (d.n_y, d.n_z));
            let p = Pr4dParams {
                n_y,
                n_z,
                frames: a.fr.unwrap_or(d.frames),
                lines_per_frame: a.n.unwrap_or(d.lines_per_frame),
                encodings: a.e.unwrap_or(d.encodings),
                s: a.s.unwrap_or(d.s),
                gamma: a.ar.unwrap_or(d.gamma),
                g_s: a.gs.unwrap_or(d.g_s),
            };
            p.validate()?;
            check_rebin(a.rebin_n, p.total())?;
            (MethodParams::Pr4d(p), a.output, a.rebin_n)
        }
    };

    if let Some((a, b)) = output.window {
        let m = match &params {
            MethodParams::Vista(p) => p.total(),
            MethodParams::Gro(p) => p.total(),
            MethodParams::Cava(p) => p.total(),
            MethodParams::Opra(p) => p.total(),
            MethodParams::Pr4d(p) => p.total(),
        };
        if a < 1 || a > b || b > m {
            return Err(CliError::Usage(format!(
                "invalid value for --window: {a}:{b} must satisfy 1 <= A <= B <= {m}"
            )));
        }
    }
    let mut formats = output.format;
    formats.sort_by_key(|f| *f as u8);
    formats.dedup();
    Ok(RunConfig {
        params,
        out_dir: output.out,
        formats,
        rebin_n,
        window: output.window,
    })
}

/// Generate the pattern described by `config`, re-binned if requested.
pub fn build_pattern(config: &RunConfig) -> Result<SamplingPattern, CliError> {
    let pattern = config.params.generate()?;
    Ok(match config.rebin_n {
        None => pattern,
        Some(k) if pattern.method().is_volumetric() => rebin_3d(&pattern, k)?,
        Some(k) => rebin_2d(&pattern, k)?,
    })
}

/// Write every requested file; returns the paths written.
pub fn run(config: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let pattern = build_pattern(config)?;
    std::fs::create_dir_all(&config.out_dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", config.out_dir.display())))?;
    let dir: &Path = &config.out_dir;
    let encodings = pattern.grid().encodings();
    let mut written = Vec::new();
    for format in &config.formats {
        match format {
            Format::Csv => {
                let path = dir.join("samples.csv");
                write_samples_csv(&pattern, &path)?;
                written.push(path);
            }
            Format::Pbm => {
                let mode = MaskMode::for_pattern(&pattern);
                for e in 1..=encodings {
                    let path = dir.join(format!("mask_e{e}.pbm"));
                    write_mask_pbm(&pattern, &path, mode, e)?;
                    written.push(path);
                }
            }
            Format::Pgm => {
                for e in 1..=encodings {
                    let path = dir.join(format!("counts_e{e}.pgm"));
                    render_pgm(&pattern, &path, config.window, e)?;
                    written.push(path);
                    if !pattern.method().is_volumetric() {
                        let path = dir.join(format!("trace_e{e}.pgm"));
                        render_order_trace(&pattern, &path, config.window, e)?;
                        written.push(path);
                    }
                }
            }
            Format::Stats => {
                let path = dir.join("stats.txt");
                write_stats(&pattern, &pattern_stats(&pattern)?, &path)?;
                written.push(path);
            }
        }
    }
    Ok(written)
}

/// Entry point shared by the binary.
pub fn main_with_args<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_cli(argv).and_then(|cfg| run(&cfg));
    match result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Clap(e)) => {
            let code = e.exit_code();
            let _ = e.print();
            ExitCode::from(code.clamp(0, 255) as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
