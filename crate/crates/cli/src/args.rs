use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use pathinfo_core::sampling::IntRange;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Full report for one configuration file.
    Analyze,
    /// Randomized sweep over an (N, d) grid checking both relations.
    Verify,
    /// CSV trace along a one-parameter family.
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Path-information and coherence calculator for N-path interferometers.
///
/// Exit status: 0 when every checked relation holds within the tolerance,
/// 1 on a violation, 2 on bad usage or input.
#[derive(Debug, Clone, Parser)]
#[command(name = "pathinfo", version)]
pub struct Args {
    #[arg(long, value_enum)]
    pub command: Command,

    /// Configuration file (analyze).
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Write the report or per-row output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Defaults to json for analyze and csv otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Configurations per (N, d) cell (verify).
    #[arg(long, default_value_t = 100)]
    pub samples: usize,

    /// Path counts, as `LO..HI`, `LO-HI` or a single value.
    #[arg(long = "n-range", visible_alias = "n")]
    pub n_range: Option<String>,

    /// Detector dimensions; defaults to 1..2N for verify and 1..8 for dimension-scan.
    #[arg(long = "d-range", visible_alias = "d")]
    pub d_range: Option<String>,

    /// Dirichlet concentration for sampled priors.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,

    /// Sample priors uniformly instead of from a Dirichlet.
    #[arg(long)]
    pub uniform_priors: bool,

    /// A gap below `-tolerance` counts as a violation.
    #[arg(long, default_value_t = pathinfo_core::DEFAULT_TOLERANCE)]
    pub tolerance: f64,

    /// overlap-scan, prior-scan or dimension-scan (sweep).
    #[arg(long)]
    pub family: Option<String>,

    /// Grid points for overlap-scan and prior-scan.
    #[arg(long, default_value_t = 11)]
    pub steps: usize,

    /// Detector overlap for prior-scan.
    #[arg(long, default_value_t = 0.0)]
    pub overlap: f64,

    /// Local-search restarts for the accessible information. Defaults to 0 for
    /// verify and 8 otherwise.
    #[arg(long)]
    pub restarts: Option<usize>,
}

impl Args {
    pub fn restarts(&self) -> usize {
        self.restarts.unwrap_or(match self.command {
            Command::Verify => 0,
            _ => 8,
        })
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::Analyze => Format::Json,
            _ => Format::Csv,
        })
    }
}

pub fn parse_range(text: &str) -> Result<IntRange, CliError> {
    let bad = || CliError::Usage(format!("bad range '{text}', expected LO..HI, LO-HI or N"));
    let text = text.trim();
    let (lo, hi) = if let Some((a, b)) = text.split_once("..") {
        (a, b.strip_prefix('=').unwrap_or(b))
    } else if let Some((a, b)) = text.split_once('-') {
        (a, b)
    } else {
        (text, text)
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    IntRange::new(lo, hi).map_err(|_| bad())
}
