//! Argument parsing and resolution into [`CommandSpec`].

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracloci::solver::BlueShiftProtocol;
use fracloci::{Branch, LocusKind};

use crate::config::{parse_formats, Format};
use crate::envelope::{BlueShiftSpec, CommandSpec, ScatterSpec, SurveySpec, TraceSpec};
use crate::error::CliError;
use crate::recipes;

#[derive(Debug, Parser)]
#[command(name = "fracloci", version, about = "Spectral singularity and CPA loci of a complex barrier with a fractional kinetic term")]
pub struct Cli {
    /// TOML file with run settings; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Comma-separated list of csv, json, svg.
    #[arg(long, global = true, value_parser = parse_formats)]
    pub format: Option<BTreeSet<Format>>,
    /// Accepted for scripting; every run is already deterministic.
    #[arg(long, global = true)]
    pub seedless: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transmission and reflection over an energy grid.
    Scatter(ScatterArgs),
    /// Trace SS or CPA loci in the (rho, sigma) plane.
    Trace(TraceArgs),
    /// Locus energy along a fixed gain/loss ratio as alpha varies.
    Blueshift(BlueShiftArgs),
    /// Residual minima per mode index and sign branch.
    Survey(SurveyArgs),
    /// Re-run the command recorded in a JSON result.
    Replay(ReplayArgs),
    /// Print the tool version.
    Version,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Ss,
    Cpa,
}

impl From<KindArg> for LocusKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Ss => LocusKind::Ss,
            KindArg::Cpa => LocusKind::Cpa,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindsArg {
    Ss,
    Cpa,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolArg {
    FixedPotential,
    FixedWidth,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub vr: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub vi: f64,
    /// Barrier half-width.
    #[arg(long, default_value_t = 1.0)]
    pub d: f64,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    pub emin: f64,
    #[arg(long, default_value_t = 10.0)]
    pub emax: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    /// Named preset: fig1a, fig1b, fig2a, fig2b, fig2c, fig2d.
    #[arg(long)]
    pub recipe: Option<String>,
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    /// Repeatable or comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Repeatable or comma-separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub n: Vec<i32>,
    /// `lo,hi`
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub rho_range: Option<(f64, f64)>,
    /// Number of rho columns.
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Trace both sign branches and allow n <= 0.
    #[arg(long)]
    pub all_branches: bool,
}

#[derive(Debug, Args)]
pub struct BlueShiftArgs {
    /// V_i / V_r.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub ratio: f64,
    #[arg(long, default_value_t = 2)]
    pub n: i32,
    /// Comma-separated; defaults to 2.0 down to 1.2 in steps of 0.1.
    #[arg(long, value_delimiter = ',')]
    pub alphas: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub d: f64,
    #[arg(long, value_enum, default_value = "ss")]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value = "fixed-potential")]
    pub protocol: ProtocolArg,
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = -3, allow_negative_numbers = true)]
    pub n_min: i32,
    #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
    pub n_max: i32,
    /// `NxM` nodes in rho and sigma.
    #[arg(long, value_parser = parse_grid, default_value = "50x50")]
    pub grid: [usize; 2],
    #[arg(long, value_enum, default_value = "ss")]
    pub kind: KindsArg,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// A JSON result written by an earlier run.
    pub envelope: PathBuf,
    /// Exit with status 2 unless the new payload equals the stored one.
    #[arg(long)]
    pub check: bool,
}

pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected lo,hi, got '{s}'"))?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    Ok((lo, hi))
}

pub fn parse_grid(s: &str) -> Result<[usize; 2], String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected NxM, got '{s}'"))?;
    let n: usize = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let m: usize = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    Ok([n, m])
}

pub fn default_blueshift_alphas() -> Vec<f64> {
    (0..=8).map(|i| (20 - i) as f64 / 10.0).collect()
}

impl ScatterArgs {
    pub fn resolve(&self) -> CommandSpec {
        CommandSpec::Scatter(ScatterSpec {
            vr: self.vr,
            vi: self.vi,
            d: self.d,
            alpha: self.alpha,
            emin: self.emin,
            emax: self.emax,
            points: self.points,
        })
    }
}

impl TraceArgs {
    pub fn resolve(&self) -> Result<CommandSpec, CliError> {
        let recipe = match &self.recipe {
            Some(name) => Some(recipes::lookup(name).ok_or_else(|| {
                CliError::Usage(format!("unknown recipe '{name}' (known: {})", recipes::names().join(", ")))
            })?),
            None => None,
        };
        let kind = self.kind.map(LocusKind::from).or(recipe.map(|r| r.kind)).unwrap_or(LocusKind::Ss);
        let alphas = if self.alpha.is_empty() { recipe.map_or(vec![2.0], |r| r.alphas.to_vec()) } else { self.alpha.clone() };
        let ns = if self.n.is_empty() { recipe.map_or(vec![1, 2, 3, 4, 5], |r| r.ns.to_vec()) } else { self.n.clone() };
        let branches = if self.all_branches { vec![Branch::Minus, Branch::Plus] } else { vec![Branch::Minus] };
        if !self.all_branches {
            if let Some(bad) = ns.iter().find(|&&n| n < 1) {
                return Err(CliError::Usage(format!("n = {bad} needs --all-branches")));
            }
        }
        Ok(CommandSpec::Trace(TraceSpec { recipe: self.recipe.clone(), kind, alphas, ns, branches }))
    }
}

impl BlueShiftArgs {
    pub fn resolve(&self) -> CommandSpec {
        CommandSpec::Blueshift(BlueShiftSpec {
            ratio: self.ratio,
            n: self.n,
            kind: self.kind.into(),
            alphas: if self.alphas.is_empty() { default_blueshift_alphas() } else { self.alphas.clone() },
            d: self.d,
            protocol: match self.protocol {
                ProtocolArg::FixedPotential => BlueShiftProtocol::FixedPotential,
                ProtocolArg::FixedWidth => BlueShiftProtocol::FixedWidth,
            },
        })
    }
}

impl SurveyArgs {
    pub fn resolve(&self) -> CommandSpec {
        let kinds = match self.kind {
            KindsArg::Ss => vec![LocusKind::Ss],
            KindsArg::Cpa => vec![LocusKind::Cpa],
            KindsArg::Both => vec![LocusKind::Ss, LocusKind::Cpa],
        };
        CommandSpec::Survey(SurveySpec {
            alpha: self.alpha,
            n_min: self.n_min,
            n_max: self.n_max,
            grid: self.grid,
            kinds,
            branches: vec![Branch::Minus, Branch::Plus],
        })
    }
}
