//! The JSON document written for every run.

use fracloci::scattering::CoefficientRow;
use fracloci::solver::{BlueShiftProtocol, BlueShiftReport, CurveTrace, SurveyReport};
use fracloci::{Branch, LocusKind};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterSpec {
    pub vr: f64,
    pub vi: f64,
    pub d: f64,
    pub alpha: f64,
    pub emin: f64,
    pub emax: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSpec {
    pub recipe: Option<String>,
    pub kind: LocusKind,
    pub alphas: Vec<f64>,
    pub ns: Vec<i32>,
    pub branches: Vec<Branch>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlueShiftSpec {
    pub ratio: f64,
    pub n: i32,
    pub kind: LocusKind,
    pub alphas: Vec<f64>,
    pub d: f64,
    pub protocol: BlueShiftProtocol,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveySpec {
    pub alpha: f64,
    pub n_min: i32,
    pub n_max: i32,
    pub grid: [usize; 2],
    pub kinds: Vec<LocusKind>,
    pub branches: Vec<Branch>,
}

/// A fully resolved command: recipes and defaults already expanded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum CommandSpec {
    Scatter(ScatterSpec),
    Trace(TraceSpec),
    Blueshift(BlueShiftSpec),
    Survey(SurveySpec),
}

impl CommandSpec {
    pub fn name(&self) -> &'static str {
        match self {
            CommandSpec::Scatter(_) => "scatter",
            CommandSpec::Trace(_) => "trace",
            CommandSpec::Blueshift(_) => "blueshift",
            CommandSpec::Survey(_) => "survey",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "data", rename_all = "lowercase")]
pub enum Payload {
    Scatter(Vec<CoefficientRow>),
    Trace(Vec<CurveTrace>),
    Blueshift(BlueShiftReport),
    Survey(SurveyReport),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Complete,
    Partial,
    Failed,
}

impl RunStatus {
    pub fn exit_code(self) -> u8 {
        match self {
            RunStatus::Complete => 0,
            RunStatus::Failed => 2,
            RunStatus::Partial => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: CommandSpec,
    pub config: RunConfig,
    pub timestamp_unix: u64,
    pub status: RunStatus,
    pub payload: Payload,
    pub anomalies: Vec<String>,
}

/// The parts of an envelope needed to re-run it; the payload is kept as raw JSON.
#[derive(Debug, Clone, Deserialize)]
pub struct StoredEnvelope {
    pub schema_version: u32,
    pub command: CommandSpec,
    pub config: RunConfig,
    pub payload: serde_json::Value,
}

/// Seconds since the epoch, or `SOURCE_DATE_EPOCH` when it is set.
pub fn timestamp() -> u64 {
    if let Some(v) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.trim().parse().ok()) {
        return v;
    }
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}
