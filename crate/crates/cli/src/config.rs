use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyzero::complexroots::DEFAULT_SEED;
use polyzero::rational::{self, Rational};
use polyzero::{Error, Family, FamilySpec};
use serde::Serialize;

pub const SEED_ENV: &str = "POLYZERO_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Pass = 0,
    Fail = 1,
    Partial = 2,
    Invalid = 64,
}

#[derive(Debug)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError { exit: Exit::Invalid, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::InvalidParameter(_) | Error::Parse(_) | Error::ZeroPolynomial | Error::ConstantPolynomial => {
                Exit::Invalid
            }
            Error::NotConverged(_) | Error::AmbiguousMatch(_) | Error::EndpointRoot(_) => Exit::Partial,
            _ => Exit::Fail,
        };
        CliError { exit, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { exit: Exit::Fail, message: e.to_string() }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError { exit: Exit::Fail, message: e.to_string() }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError { exit: Exit::Fail, message: e.to_string() }
    }
}

#[derive(Debug, Parser)]
#[command(name = "polyzero", version, about = "Roots of k-step Fibonacci polynomial families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write family polynomials as JSON, or a G(k, .) sequence as lines.
    Gen(GenArgs),
    /// Isolate real roots (or all complex roots) of family members.
    Roots(RootsArgs),
    /// Run verification sweeps and write a JSON manifest.
    Verify(VerifyArgs),
    /// Merge verification manifests into one.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Numerics {
    /// Enclosure width, decimal or scientific (converted exactly).
    #[arg(long, default_value = "1e-12", allow_hyphen_values = true)]
    pub tol: String,
    /// Seed for the complex root finder and random samples; the
    /// POLYZERO_SEED environment variable takes precedence.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Members {
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Sweep k through kmax inclusive.
    #[arg(long)]
    pub kmax: Option<u32>,
    /// Derivative order for D, integral depth for H.
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<i32>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub members: Members,
    /// Emit G(k, 1..=count) instead of polynomials.
    #[arg(long)]
    pub sequence: bool,
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[command(flatten)]
    pub members: Members,
    #[command(flatten)]
    pub numerics: Numerics,
    /// All complex roots by Aberth iteration instead of certified real roots.
    #[arg(long)]
    pub complex: bool,
    /// Plot-ready CSV of k against root and distance to its limit.
    #[arg(long, conflicts_with = "complex")]
    pub plot: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated claim groups, or "all".
    #[arg(long, value_delimiter = ',', required = true)]
    pub claims: Vec<String>,
    /// Overrides the upper end of every sweep.
    #[arg(long)]
    pub kmax: Option<u32>,
    /// Restricts derivative and integral sweeps to this order.
    #[arg(long)]
    pub l: Option<i32>,
    #[command(flatten)]
    pub numerics: Numerics,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Manifests written by `verify`.
    #[arg(long, num_args = 1.., required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

/// Validated settings shared by the subcommands.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub family: Option<Family>,
    pub k_range: Option<(u32, u32)>,
    pub l: i32,
    #[serde(serialize_with = "ser_frac")]
    pub tol: Rational,
    pub seed: u64,
    pub format: Format,
}

fn ser_frac<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational::to_fraction_string(r))
}

impl RunConfig {
    pub fn specs(&self) -> Result<Vec<FamilySpec>, CliError> {
        let family = self.family.ok_or_else(|| CliError::invalid("--family is required"))?;
        let (lo, hi) = self.k_range.ok_or_else(|| CliError::invalid("--k is required"))?;
        let specs: Vec<FamilySpec> = (lo..=hi).map(|k| FamilySpec { family, k, l: self.l }).collect();
        for s in &specs {
            s.validate()?;
        }
        Ok(specs)
    }
}

pub fn parse_tol(s: &str) -> Result<Rational, CliError> {
    let t = rational::parse_decimal(s).map_err(|e| CliError::invalid(format!("--tol: {e}")))?;
    if t <= rational::int(0) {
        return Err(CliError::invalid("--tol must be positive"));
    }
    Ok(t)
}

pub fn resolve_seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::invalid(format!("{SEED_ENV}={v:?} is not a 64-bit integer"))),
        Err(_) => Ok(flag),
    }
}

pub fn k_range(m: &Members) -> Result<Option<RangeInclusive<u32>>, CliError> {
    match (m.k, m.kmax) {
        (None, None) => Ok(None),
        (None, Some(_)) => Err(CliError::invalid("--kmax needs --k")),
        (Some(k), None) => Ok(Some(k..=k)),
        (Some(k), Some(kmax)) if kmax >= k => Ok(Some(k..=kmax)),
        (Some(k), Some(kmax)) => Err(CliError::invalid(format!("empty range: --k {k} > --kmax {kmax}"))),
    }
}

pub fn default_l(family: Option<Family>, l: Option<i32>) -> i32 {
    l.unwrap_or(match family {
        Some(Family::D) => 1,
        _ => 0,
    })
}
