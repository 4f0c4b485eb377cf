//! Run configuration: a flat TOML file whose keys are all optional.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use fracloci::medium::{ELECTRON_MASS_SI, HBAR_SI, SPEED_OF_LIGHT_SI};
use fracloci::solver::{Tolerances, TraceSettings, DEFAULT_N_MAX, SIGMA_MIN, TRACE_TOL};
use fracloci::complex_kernel::DEFAULT_ROOT_TOL;
use fracloci::{UnitMode, UnitSystem};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(format!("unknown format '{other}' (expected csv, json or svg)")),
        }
    }
}

/// Parse `csv,json,svg`.
pub fn parse_formats(s: &str) -> Result<BTreeSet<Format>, String> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub mode: UnitMode,
    /// Characteristic velocity; defaults to 1 (natural) or 1e-5 c (physical).
    pub u: Option<f64>,
    /// Physical mode only.
    pub hbar: Option<f64>,
    /// Physical mode only.
    pub mass: Option<f64>,
    pub rho_min: f64,
    pub rho_max: f64,
    pub resolution: usize,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub steps: usize,
    pub trace_tol: f64,
    pub root_tol: f64,
    pub n_max: i32,
    pub out: PathBuf,
    pub formats: BTreeSet<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let t = TraceSettings::default();
        Self {
            mode: UnitMode::Natural,
            u: None,
            hbar: None,
            mass: None,
            rho_min: t.rho_min,
            rho_max: t.rho_max,
            resolution: t.resolution,
            sigma_min: SIGMA_MIN,
            sigma_max: t.sigma_max,
            steps: t.steps,
            trace_tol: TRACE_TOL,
            root_tol: DEFAULT_ROOT_TOL,
            n_max: DEFAULT_N_MAX,
            out: PathBuf::from("out"),
            formats: [Format::Csv, Format::Json, Format::Svg].into_iter().collect(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    pub fn units(&self) -> Result<UnitSystem, CliError> {
        let units = match self.mode {
            UnitMode::Natural => UnitSystem::natural_with_velocity(self.u.unwrap_or(1.0)),
            UnitMode::Physical => UnitSystem::new(
                UnitMode::Physical,
                self.hbar.unwrap_or(HBAR_SI),
                self.mass.unwrap_or(ELECTRON_MASS_SI),
                self.u.unwrap_or(1.0e-5 * SPEED_OF_LIGHT_SI),
            ),
        };
        units.map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances { trace: self.trace_tol, root: self.root_tol, sigma_min: self.sigma_min }
    }

    pub fn trace_settings(&self) -> TraceSettings {
        TraceSettings {
            rho_min: self.rho_min,
            rho_max: self.rho_max,
            resolution: self.resolution,
            sigma_max: self.sigma_max,
            steps: self.steps,
            tolerances: self.tolerances(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.formats.is_empty() {
            return Err(CliError::Usage("at least one output format is required".into()));
        }
        if self.n_max < 1 {
            return Err(CliError::Usage(format!("n_max = {} must be at least 1", self.n_max)));
        }
        self.units()?;
        self.trace_settings().validate().map_err(|e| CliError::Usage(e.to_string()))
    }
}
