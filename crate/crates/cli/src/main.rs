//! `lorentz-geom`: frames, evolutes, Bertrand curves and constant slope
//! surfaces of curves in Minkowski 3-space from the command line.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 on bad
//! input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "lorentz-geom", version, about = "Curves and surfaces in Minkowski 3-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// CSV of the Sabban frame (sphere curves) or Frenet frame (free curves).
    Frame(FrameArgs),
    /// CSV of the Bertrand curve built from a curve on S12 or H2.
    Bertrand(BertrandArgs),
    /// OBJ mesh of the constant slope surface generated by a curve.
    Surface(SurfaceArgs),
    /// CSV of the de Sitter or hyperbolic evolute.
    Evolute(EvoluteArgs),
    /// Run verification checks and print a report.
    ///
    /// A curve is checked at u = e, θ = 1.5 unless constants are given.
    Verify(VerifyArgs),
}

/// Where the curve comes from: a preset or a curve file.
#[derive(Args, Debug, Clone)]
pub struct CurveInput {
    /// Built-in curve: example_336, example_46, pseudo_circle_s12, pseudo_circle_h2.
    #[arg(long, conflicts_with = "curve")]
    pub preset: Option<String>,
    /// Preset parameter (repeatable), e.g. `--param 'sqrt(2)'`.
    #[arg(long = "param", requires = "preset", allow_hyphen_values = true)]
    pub params: Vec<String>,
    /// Curve file with `space`, `x`, `y`, `z` and `domain` keys.
    #[arg(long)]
    pub curve: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArg {
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FrameArgs {
    #[command(flatten)]
    pub input: CurveInput,
    /// Parameter range `a:b`; defaults to the curve's domain.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Args, Debug, Clone)]
pub struct BertrandConstants {
    /// Length constant `a` (with `--xi`).
    #[arg(long, allow_hyphen_values = true, requires = "xi", conflicts_with_all = ["u", "theta"])]
    pub a: Option<String>,
    /// Constant `ξ` (with `--a`).
    #[arg(long, allow_hyphen_values = true, requires = "a")]
    pub xi: Option<String>,
    /// Surface parameter `u` (with `--theta`); `a` and `ξ` follow from it.
    #[arg(long, allow_hyphen_values = true, requires = "theta")]
    pub u: Option<String>,
    /// Slope constant `θ`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
}

#[derive(Args, Debug)]
pub struct BertrandArgs {
    #[command(flatten)]
    pub input: CurveInput,
    #[command(flatten)]
    pub constants: BertrandConstants,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value = "1e-10")]
    pub quad_tol: String,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    #[command(flatten)]
    pub input: CurveInput,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: String,
    /// `u` range `a:b` (or a single value), `u > 0`.
    #[arg(long)]
    pub u: String,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[arg(long, default_value_t = 50)]
    pub nu: usize,
    #[arg(long, default_value_t = 50)]
    pub nv: usize,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Args, Debug)]
pub struct EvoluteArgs {
    #[command(flatten)]
    pub input: CurveInput,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run a built-in suite instead of checking a single curve; only `paper`
    /// exists.
    #[arg(long, conflicts_with_all = ["preset", "curve"])]
    pub suite: Option<String>,
    #[command(flatten)]
    pub input: CurveInput,
    #[command(flatten)]
    pub constants: BertrandConstants,
    /// Grid size for the checks.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value = "1e-7")]
    pub tol: String,
    #[arg(long, default_value = "1e-10")]
    pub quad_tol: String,
    #[command(flatten)]
    pub output: OutputArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Frame(a) => commands::frame(a),
        Command::Bertrand(a) => commands::bertrand(a),
        Command::Surface(a) => commands::surface(a),
        Command::Evolute(a) => commands::evolute(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(commands::Outcome::Success) => ExitCode::SUCCESS,
        Ok(commands::Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
