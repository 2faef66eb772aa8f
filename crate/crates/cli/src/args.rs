//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gailrs::qmc::Periodizer;
use gailrs::{Measure, TolType};

#[derive(Debug, Parser)]
#[command(name = "gailrs", version, about = "Guaranteed adaptive integration, approximation and minimization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Piecewise linear approximation of f on [a, b].
    Funappx(FunappxArgs),
    /// Global minimum of f on [a, b].
    Funmin(FunminArgs),
    /// Integral of f over [a, b].
    Integral(IntervalArgs),
    /// Mean of f(X) with X uniform on [0,1]^d or standard normal.
    Meanmc(MeanArgs),
    /// Success probability of a built-in Bernoulli generator.
    Meanmcber(BerArgs),
    /// Integral over a box by Monte Carlo.
    Cubmc(CubMcArgs),
    /// Integral over a box on a shifted rank-1 lattice.
    Cublattice(LatticeArgs),
    /// Integral over a box on a shifted Sobol' sequence.
    Cubsobol(SobolArgs),
    /// Rerun the built-in fixture table and check every result.
    Examples(ExamplesArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Funappx(_) => "funappx",
            Command::Funmin(_) => "funmin",
            Command::Integral(_) => "integral",
            Command::Meanmc(_) => "meanmc",
            Command::Meanmcber(_) => "meanmcber",
            Command::Cubmc(_) => "cubmc",
            Command::Cublattice(_) => "cublattice",
            Command::Cubsobol(_) => "cubsobol",
            Command::Examples(_) => "examples",
        }
    }

    pub fn output(&self) -> &Output {
        match self {
            Command::Funappx(a) => &a.interval.output,
            Command::Funmin(a) => &a.interval.output,
            Command::Integral(a) => &a.output,
            Command::Meanmc(a) => &a.output,
            Command::Meanmcber(a) => &a.output,
            Command::Cubmc(a) => &a.output,
            Command::Cublattice(a) => &a.qmc.output,
            Command::Cubsobol(a) => &a.qmc.output,
            Command::Examples(a) => &a.output,
        }
    }
}

/// Where and how the report is written. Not echoed into the report.
#[derive(Debug, Clone, Default, Args)]
pub struct Output {
    /// Write the JSON report to this path ("-" for stdout).
    #[arg(long, value_name = "PATH")]
    pub json: Option<String>,
    /// Keep wall-clock times in the report (makes it non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IntervalArgs {
    /// Function of x.
    #[arg(long)]
    pub f: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub abstol: f64,
    #[arg(long, default_value_t = 10)]
    pub nlo: usize,
    #[arg(long, default_value_t = 1000)]
    pub nhi: usize,
    #[arg(long, default_value = "1e7", value_parser = parse_count)]
    pub nmax: u64,
    #[arg(long, default_value_t = 1000)]
    pub maxiter: u64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FunappxArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub interval: IntervalArgs,
    /// Also evaluate the approximant at N equally spaced points.
    #[arg(long, value_name = "N")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FunminArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub interval: IntervalArgs,
    #[arg(long, default_value_t = 1e-3)]
    pub tolx: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TolArgs {
    #[arg(long)]
    pub abstol: Option<f64>,
    #[arg(long)]
    pub reltol: Option<f64>,
    #[arg(long, value_enum, default_value_t = TolKind::Max)]
    pub toltype: TolKind,
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TolKind {
    Max,
    Comb,
}

impl From<TolKind> for TolType {
    fn from(k: TolKind) -> Self {
        match k {
            TolKind::Max => TolType::Max,
            TolKind::Comb => TolType::Comb,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Uniform,
    Normal,
}

impl From<MeasureKind> for Measure {
    fn from(k: MeasureKind) -> Self {
        match k {
            MeasureKind::Uniform => Measure::Uniform,
            MeasureKind::Normal => Measure::Normal,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct McArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tol: TolArgs,
    #[arg(long, default_value_t = 0.01)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.2)]
    pub fudge: f64,
    #[arg(long, default_value = "1e4", value_parser = parse_count)]
    pub nsig: u64,
    #[arg(long, default_value = "1e4", value_parser = parse_count)]
    pub n1: u64,
    #[arg(long, default_value_t = 100.0)]
    pub tbudget: f64,
    #[arg(long, default_value = "1e9", value_parser = parse_count)]
    pub nbudget: u64,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MeanArgs {
    /// Function of x (d = 1) or x1..xd.
    #[arg(long)]
    pub f: String,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = MeasureKind::Uniform)]
    pub measure: MeasureKind,
    #[command(flatten)]
    #[serde(flatten)]
    pub mc: McArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BerArgs {
    /// Success probability of the generator.
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 1e-2)]
    pub abstol: f64,
    #[arg(long, default_value_t = 0.01)]
    pub alpha: f64,
    #[arg(long, default_value = "1e9", value_parser = parse_count)]
    pub nmax: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Domain {
    /// Integrand in x (d = 1) or x1..xd.
    #[arg(long)]
    pub f: String,
    /// Dimension; taken from --box when omitted.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Bounds per coordinate, "l1,u1;l2,u2;...". Defaults to the unit cube
    /// (uniform) or all of R^d (normal).
    #[arg(long = "box", value_name = "BOUNDS", allow_hyphen_values = true)]
    #[serde(rename = "box")]
    pub bounds: Option<String>,
    #[arg(long, value_enum, default_value_t = MeasureKind::Uniform)]
    pub measure: MeasureKind,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CubMcArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub domain: Domain,
    #[command(flatten)]
    #[serde(flatten)]
    pub mc: McArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QmcArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub domain: Domain,
    #[command(flatten)]
    #[serde(flatten)]
    pub tol: TolArgs,
    #[arg(long, default_value_t = 10)]
    pub mmin: u32,
    #[arg(long, default_value_t = 24)]
    pub mmax: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LatticeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub qmc: QmcArgs,
    /// id, Baker, C0, C1 or C1sin.
    #[arg(long, default_value = "Baker", value_parser = parse_transform)]
    pub transform: Periodizer,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SobolArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub qmc: QmcArgs,
    /// Use the digital shift alone, without the linear scramble.
    #[arg(long)]
    pub no_scramble: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExamplesArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

/// Counts may be written as integers or in floating notation such as `1e7`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a count"))?;
    if v >= 0.0 && v.fract() == 0.0 && v < 1.8e19 {
        Ok(v as u64)
    } else {
        Err(format!("'{s}' is not a non-negative integer"))
    }
}

pub fn parse_transform(s: &str) -> Result<Periodizer, String> {
    Periodizer::from_name(s).ok_or_else(|| format!("unknown transform '{s}' (id, Baker, C0, C1, C1sin)"))
}

/// Parses `"l1,u1;l2,u2;..."` into lower and upper bound vectors.
pub fn parse_box(s: &str) -> Result<(Vec<f64>, Vec<f64>), String> {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for (k, part) in s.split(';').enumerate() {
        let nums: Vec<&str> = part.split(',').map(str::trim).collect();
        if nums.len() != 2 {
            return Err(format!("box coordinate {} needs 'lower,upper', got '{part}'", k + 1));
        }
        let num = |t: &str| t.parse::<f64>().map_err(|_| format!("'{t}' is not a number"));
        lower.push(num(nums[0])?);
        upper.push(num(nums[1])?);
    }
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e7").unwrap(), 10_000_000);
        assert_eq!(parse_count("42").unwrap(), 42);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }

    #[test]
    fn boxes() {
        let (l, u) = parse_box("0,1; -inf, inf").unwrap();
        assert_eq!(l, vec![0.0, f64::NEG_INFINITY]);
        assert_eq!(u, vec![1.0, f64::INFINITY]);
        assert!(parse_box("0;1").is_err());
        assert!(parse_box("a,1").is_err());
    }
}
