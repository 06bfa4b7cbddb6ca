//! Command-line front end: `inellipse <command> [options]`.
//!
//! Every command is a pure function of its input document and [`RunConfig`].
//! Exit codes: 0 success, 1 failed verification or counterexample candidate,
//! 2 usage or input error.

pub mod commands;
pub mod document;
pub mod error;
pub mod format;
pub mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use document::QuadDocument;
pub use error::CliError;
pub use svg::{render_svg, RenderError, Scene};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct RunConfig {
    /// RNG seed for sampled checks and scans.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Sample budget for `verify` and `conjecture`.
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Tolerance for equation display and per-input checks.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive_f64)]
    pub tol: f64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            samples: 10_000,
            tol: 1e-9,
            out: None,
            format: None,
        }
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Layer {
    /// Maximal-area inscribed ellipse.
    Max,
    /// Minimal-area circumscribed ellipse.
    Circumscribed,
    /// Orthogonal best-fit line of the vertices.
    Bestfit,
    /// Foci of the maximal inscribed ellipse.
    Foci,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Classification, area, diagonal midpoints and the canonical (s, t) pair.
    #[command(after_help = format!("CSV columns: {}", format::ANALYZE_COLUMNS))]
    Analyze {
        /// Quad document (JSON), or `-` for stdin.
        input: PathBuf,
    },
    /// Maximal-area inscribed ellipse: conic, geometry, tangency points, ratio to π/4.
    MaxEllipse { input: PathBuf },
    /// Members of the inscribed family on a uniform parameter grid.
    #[command(after_help = format!(
        "CSV columns: {}\nparameter_kind is `v` (parallelograms), `h` (canonical center abscissa) or `tau` (trapezoids).",
        format::FAMILY_COLUMNS
    ))]
    Family {
        input: PathBuf,
        /// Number of members.
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..))]
        members: u64,
    },
    /// Orthogonal least-squares line through the vertices.
    Bestfit { input: PathBuf },
    /// Runs the full verification suite, plus per-input checks when a document is given.
    Verify { input: Option<PathBuf> },
    /// Seeded scan of circumscribed-ellipse area ratios.
    #[command(after_help = format!("CSV columns: {}", format::CONJECTURE_COLUMNS))]
    Conjecture {
        /// Where to store counterexample candidates, if any are found.
        #[arg(long, default_value = "conjecture-candidates.json")]
        candidates: PathBuf,
    },
    /// SVG of the quadrilateral with the selected layers.
    Render {
        input: PathBuf,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "max,bestfit,foci"
        )]
        show: Vec<Layer>,
    },
}

#[derive(Debug, Parser)]
#[command(
    name = "inellipse",
    version,
    about = "Ellipses inscribed in and circumscribed about convex quadrilaterals"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code. Never panics on malformed input.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::execute(&cli.command, &cli.config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
