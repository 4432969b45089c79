use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracdisc::{ElementKind, Family};

pub const DEFAULT_TS: f64 = 0.001;

/// Fractional-order differentiator and integrator design.
#[derive(Debug, Parser)]
#[command(name = "fracdisc", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Realize one IIR filter and write its coefficients.
    Synth(SynthArgs),
    /// Tune alpha of an interpolated family with the GA.
    Optimize(OptimizeArgs),
    /// Export ideal and filter Bode data as CSV.
    Bode(BodeArgs),
    /// Score several schemes against the same objective.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Realization flags shared by every command except `bode`.
#[derive(Debug, Args)]
pub struct ElementArgs {
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub kind: ElementKind,
    #[arg(long)]
    pub order: usize,
    #[arg(long, default_value_t = DEFAULT_TS)]
    pub ts: f64,
}

#[derive(Debug, Args)]
pub struct GaArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 24)]
    pub pop: usize,
    #[arg(long, default_value_t = 60)]
    pub gens: usize,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub family: Family,
    /// Interpolation weight; required for al-alaoui and chen-vinagre.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[command(flatten)]
    pub element: ElementArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub family: Family,
    #[command(flatten)]
    pub element: ElementArgs,
    /// Magnitude weight of the objective.
    #[arg(long)]
    pub w: f64,
    #[command(flatten)]
    pub ga: GaArgs,
    /// Also run the 1e-3 grid search and report the difference.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BodeArgs {
    /// A filter document written by `synth` or `optimize`.
    #[arg(long, conflicts_with_all = ["family", "alpha", "gamma", "kind", "order", "ts"])]
    pub filter: Option<PathBuf>,
    #[arg(long, required_unless_present = "filter")]
    pub family: Option<Family>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, required_unless_present = "filter")]
    pub gamma: Option<f64>,
    #[arg(long, required_unless_present = "filter")]
    pub kind: Option<ElementKind>,
    #[arg(long, required_unless_present = "filter")]
    pub order: Option<usize>,
    #[arg(long)]
    pub ts: Option<f64>,
    #[arg(long, default_value_t = fracdisc::response::DEFAULT_POINTS)]
    pub points: usize,
    /// Frequency band `LO,HI` in rad/s; defaults to 1e-4 up to Nyquist.
    #[arg(long, value_parser = parse_band)]
    pub band: Option<(f64, f64)>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// `family`, `family:ALPHA` or `family:opt`; repeatable.
    #[arg(long = "case", required = true)]
    pub cases: Vec<Case>,
    #[command(flatten)]
    pub element: ElementArgs,
    #[arg(long)]
    pub w: f64,
    #[command(flatten)]
    pub ga: GaArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CaseAlpha {
    None,
    Fixed(f64),
    Optimized,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Case {
    pub family: Family,
    pub alpha: CaseAlpha,
}

impl FromStr for Case {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, rest) = match s.split_once(':') {
            Some((name, rest)) => (name, Some(rest)),
            None => (s, None),
        };
        let family: Family = name.parse()?;
        let alpha = match rest {
            None => CaseAlpha::None,
            Some("opt") => CaseAlpha::Optimized,
            Some(a) => CaseAlpha::Fixed(a.parse().map_err(|_| format!("bad alpha '{a}' in case '{s}'"))?),
        };
        Ok(Case { family, alpha })
    }
}

fn parse_band(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected LO,HI")?;
    let num = |v: &str| v.trim().parse::<f64>().map_err(|_| format!("'{v}' is not a number"));
    Ok((num(lo)?, num(hi)?))
}
