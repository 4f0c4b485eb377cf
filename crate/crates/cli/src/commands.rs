//! Execution of resolved commands into result envelopes.

use fracloci::scattering::{linear_grid, scan_coefficients, RowStatus};
use fracloci::solver::{blue_shift_scan, branch_survey, trace_curve, SurveyGrid, Verdict};
use fracloci::{BarrierSpec, LevyIndex};

use crate::config::RunConfig;
use crate::envelope::{
    timestamp, BlueShiftSpec, CommandSpec, Payload, ResultEnvelope, RunStatus, ScatterSpec, SurveySpec, TraceSpec,
    SCHEMA_VERSION, TOOL_VERSION,
};
use crate::error::CliError;

/// Traced rho ranges are clipped to this window.
pub const RHO_LIMITS: (f64, f64) = (-5.0, 1.0 - 1e-3);

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn levy(alpha: f64) -> Result<LevyIndex, CliError> {
    LevyIndex::new(alpha).map_err(usage)
}

/// Run a command under a config. Usage problems surface before any work.
pub fn execute(command: &CommandSpec, config: &RunConfig) -> Result<ResultEnvelope, CliError> {
    config.validate()?;
    let (payload, status, anomalies) = match command {
        CommandSpec::Scatter(s) => scatter(s, config)?,
        CommandSpec::Trace(t) => trace(t, config)?,
        CommandSpec::Blueshift(b) => blueshift(b, config)?,
        CommandSpec::Survey(s) => survey(s, config)?,
    };
    Ok(ResultEnvelope {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        command: command.clone(),
        config: config.clone(),
        timestamp_unix: timestamp(),
        status,
        payload,
        anomalies,
    })
}

type Outcome = (Payload, RunStatus, Vec<String>);

fn scatter(s: &ScatterSpec, config: &RunConfig) -> Result<Outcome, CliError> {
    let alpha = levy(s.alpha)?;
    let barrier = BarrierSpec::new(s.vr, s.vi, s.d).map_err(usage)?;
    if !(s.emin > 0.0 && s.emax > s.emin && s.emax.is_finite()) {
        return Err(usage(format!("energy range [{}, {}] must satisfy 0 < emin < emax", s.emin, s.emax)));
    }
    if s.points < 2 {
        return Err(usage("at least 2 energy points are required"));
    }
    let units = config.units()?;
    let rows = scan_coefficients(&linear_grid(s.emin, s.emax, s.points), &barrier, alpha, &units).map_err(usage)?;
    let anomalies: Vec<String> = rows
        .iter()
        .filter_map(|r| match &r.status {
            RowStatus::Error { message } => Some(format!("E={}: {message}", r.energy)),
            RowStatus::SpectralSingularity { m22_relative } => {
                Some(format!("E={}: spectral singularity, |M22| relative {m22_relative:e}", r.energy))
            }
            RowStatus::Ok { .. } => None,
        })
        .collect();
    let partial = rows.iter().any(|r| matches!(r.status, RowStatus::Error { .. }));
    let status = if partial { RunStatus::Partial } else { RunStatus::Complete };
    Ok((Payload::Scatter(rows), status, anomalies))
}

fn trace(t: &TraceSpec, config: &RunConfig) -> Result<Outcome, CliError> {
    let mut settings = config.trace_settings();
    settings.rho_min = settings.rho_min.max(RHO_LIMITS.0);
    settings.rho_max = settings.rho_max.min(RHO_LIMITS.1);
    if settings.rho_min >= settings.rho_max {
        return Err(usage(format!(
            "rho range [{}, {}] does not intersect [{}, {}]",
            config.rho_min, config.rho_max, RHO_LIMITS.0, RHO_LIMITS.1
        )));
    }
    if t.alphas.is_empty() || t.ns.is_empty() || t.branches.is_empty() {
        return Err(usage("trace needs at least one alpha, n and branch"));
    }
    for &n in &t.ns {
        if n.abs() > config.n_max {
            return Err(usage(format!("|n| = {} exceeds n_max = {}", n.abs(), config.n_max)));
        }
    }
    let alphas = t.alphas.iter().map(|&a| levy(a)).collect::<Result<Vec<_>, _>>()?;
    let mut curves = Vec::new();
    let mut anomalies = Vec::new();
    let mut partial = false;
    for &alpha in &alphas {
        for &n in &t.ns {
            for &branch in &t.branches {
                let curve = trace_curve(alpha, n, branch, t.kind, &settings).map_err(usage)?;
                let tag = format!("alpha={} n={n} {branch} {}", alpha.value(), t.kind);
                anomalies.extend(curve.meta.warnings.iter().map(|w| format!("{tag}: {w}")));
                if curve.points.is_empty() {
                    partial = true;
                    anomalies.push(format!("{tag}: no locus points in the traced window"));
                }
                curves.push(curve);
            }
        }
    }
    let status = if partial { RunStatus::Partial } else { RunStatus::Complete };
    Ok((Payload::Trace(curves), status, anomalies))
}

fn blueshift(b: &BlueShiftSpec, config: &RunConfig) -> Result<Outcome, CliError> {
    if b.kind == fracloci::LocusKind::Ss && !(b.ratio > 0.0) {
        return Err(usage(format!("ratio = {} must be positive for spectral singularities", b.ratio)));
    }
    if !b.ratio.is_finite() || b.ratio == 0.0 {
        return Err(usage(format!("ratio = {} must be finite and nonzero", b.ratio)));
    }
    if b.n.abs() > config.n_max {
        return Err(usage(format!("|n| = {} exceeds n_max = {}", b.n.abs(), config.n_max)));
    }
    let alphas = b.alphas.iter().map(|&a| levy(a)).collect::<Result<Vec<_>, _>>()?;
    let units = config.units()?;
    let report = blue_shift_scan(b.ratio, b.n, b.kind, &alphas, b.d, &units, b.protocol, &config.trace_settings())
        .map_err(usage)?;
    let mut anomalies: Vec<String> = report
        .rows
        .iter()
        .filter_map(|r| r.error.as_ref().map(|e| format!("alpha={}: {e}", r.alpha)))
        .collect();
    let oracle = report.rows.iter().any(|r| r.error.as_deref().is_some_and(|e| e.contains("oracle")));
    let status = if oracle {
        RunStatus::Failed
    } else if report.verdict == Verdict::Withheld {
        RunStatus::Partial
    } else {
        RunStatus::Complete
    };
    if report.verdict == Verdict::Fail {
        anomalies.push("energy is not strictly increasing as alpha decreases".into());
    }
    Ok((Payload::Blueshift(report), status, anomalies))
}

fn survey(s: &SurveySpec, config: &RunConfig) -> Result<Outcome, CliError> {
    let alpha = levy(s.alpha)?;
    if s.kinds.is_empty() || s.branches.is_empty() {
        return Err(usage("survey needs at least one kind and branch"));
    }
    if s.n_min > s.n_max || s.n_min.abs().max(s.n_max.abs()) > config.n_max {
        return Err(usage(format!("n range [{}, {}] must be ordered and within n_max = {}", s.n_min, s.n_max, config.n_max)));
    }
    let grid = SurveyGrid { n_rho: s.grid[0], n_sigma: s.grid[1], ..SurveyGrid::default() };
    let report = branch_survey(&grid, alpha, (s.n_min, s.n_max), &s.branches, &s.kinds, config.root_tol).map_err(usage)?;
    let anomalies = report.anomalies.clone();
    Ok((Payload::Survey(report), RunStatus::Complete, anomalies))
}
