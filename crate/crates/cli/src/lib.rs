//! Command-line front end: configuration, result envelopes and file output.

// `!(a < b)` is used on purpose so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod config;
pub mod envelope;
pub mod error;
pub mod output;
pub mod recipes;
pub mod svg;

use std::ffi::OsString;

use clap::Parser;

use crate::cli::{Cli, Command};
use crate::config::RunConfig;
use crate::envelope::{CommandSpec, StoredEnvelope, SCHEMA_VERSION};
use crate::error::CliError;

/// Parse arguments, run, write outputs and return the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fracloci: {e}");
            e.exit_code()
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = &cli.out {
        config.out = out.clone();
    }
    if let Some(formats) = &cli.format {
        config.formats = formats.clone();
    }
    Ok(config)
}

fn dispatch(cli: Cli) -> Result<u8, CliError> {
    let spec = match &cli.command {
        Command::Version => {
            println!("fracloci {}", envelope::TOOL_VERSION);
            return Ok(0);
        }
        Command::Replay(r) => return replay(&cli, &r.envelope, r.check),
        Command::Scatter(a) => a.resolve(),
        Command::Trace(a) => a.resolve()?,
        Command::Blueshift(a) => a.resolve(),
        Command::Survey(a) => a.resolve(),
    };
    let mut config = load_config(&cli)?;
    if let Command::Trace(t) = &cli.command {
        if let Some((lo, hi)) = t.rho_range {
            config.rho_min = lo;
            config.rho_max = hi;
        }
        if let Some(r) = t.resolution {
            config.resolution = r;
        }
    }
    run_and_write(&spec, &config)
}

fn run_and_write(spec: &CommandSpec, config: &RunConfig) -> Result<u8, CliError> {
    let env = commands::execute(spec, config)?;
    let written = output::write_all(&env, &config.out, &config.formats)?;
    for path in &written {
        println!("wrote {}", path.display());
    }
    if let envelope::Payload::Blueshift(report) = &env.payload {
        println!("verdict: {}", serde_json::to_value(report.verdict).map(|v| v.as_str().unwrap_or("").to_string()).unwrap_or_default());
    }
    for a in &env.anomalies {
        eprintln!("anomaly: {a}");
    }
    Ok(env.status.exit_code())
}

fn replay(cli: &Cli, path: &std::path::Path, check: bool) -> Result<u8, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let stored: StoredEnvelope =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid result file {}: {e}", path.display())))?;
    if stored.schema_version != SCHEMA_VERSION {
        return Err(CliError::Usage(format!("unsupported schema version {}", stored.schema_version)));
    }
    let mut config = stored.config;
    if let Some(out) = &cli.out {
        config.out = out.clone();
    }
    if let Some(formats) = &cli.format {
        config.formats = formats.clone();
    }
    let env = commands::execute(&stored.command, &config)?;
    let written = output::write_all(&env, &config.out, &config.formats)?;
    for p in &written {
        println!("wrote {}", p.display());
    }
    if check {
        let fresh = serde_json::to_value(&env.payload).map_err(|e| CliError::Io(e.to_string()))?;
        if fresh != stored.payload {
            return Err(CliError::Numerical("replayed payload differs from the stored one".into()));
        }
        println!("payload reproduced");
    }
    Ok(env.status.exit_code())
}
