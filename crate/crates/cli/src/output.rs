//! Tables, file naming and atomic writes.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use fracloci::scattering::RowStatus;

use crate::config::Format;
use crate::envelope::{Payload, ResultEnvelope};
use crate::error::CliError;
use crate::svg;

/// A header plus string cells, ready for CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// Same text a JSON number gets; non-finite values become empty cells.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).unwrap_or_default()
    } else {
        String::new()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn text<T: serde::Serialize>(x: &T) -> String {
    match serde_json::to_value(x) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(v) => v.to_string(),
        Err(_) => String::new(),
    }
}

pub fn table(payload: &Payload) -> Table {
    match payload {
        Payload::Scatter(rows) => Table {
            header: vec!["energy", "status", "transmission", "reflection_left", "reflection_right", "m22_relative", "message"],
            rows: rows
                .iter()
                .map(|r| {
                    let mut cells = vec![num(r.energy)];
                    match &r.status {
                        RowStatus::Ok { transmission, reflection_left, reflection_right } => cells.extend([
                            "ok".into(),
                            num(*transmission),
                            num(*reflection_left),
                            num(*reflection_right),
                            String::new(),
                            String::new(),
                        ]),
                        RowStatus::SpectralSingularity { m22_relative } => cells.extend([
                            "spectral_singularity".into(),
                            String::new(),
                            String::new(),
                            String::new(),
                            num(*m22_relative),
                            String::new(),
                        ]),
                        RowStatus::Error { message } => cells.extend([
                            "error".into(),
                            String::new(),
                            String::new(),
                            String::new(),
                            String::new(),
                            message.clone(),
                        ]),
                    }
                    cells
                })
                .collect(),
        },
        Payload::Trace(curves) => Table {
            header: vec!["kind", "alpha", "n", "branch", "rho", "sigma", "h", "residual_rel"],
            rows: curves
                .iter()
                .flat_map(|c| {
                    c.points.iter().map(move |p| {
                        vec![
                            text(&p.kind),
                            num(c.meta.alpha.value()),
                            p.n.to_string(),
                            text(&p.branch),
                            num(p.rho),
                            num(p.sigma),
                            num(p.h),
                            num(p.residual_rel),
                        ]
                    })
                })
                .collect(),
        },
        Payload::Blueshift(report) => Table {
            header: vec!["alpha", "rho", "sigma", "h", "energy", "v_r", "v_i", "d", "error"],
            rows: report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        num(r.alpha),
                        opt(r.rho),
                        opt(r.sigma),
                        opt(r.h),
                        opt(r.energy),
                        opt(r.v_r),
                        opt(r.v_i),
                        opt(r.d),
                        r.error.clone().unwrap_or_default(),
                    ]
                })
                .collect(),
        },
        Payload::Survey(report) => Table {
            header: vec![
                "n",
                "branch",
                "kind",
                "grid_min",
                "grid_min_rho",
                "grid_min_sigma",
                "root_min",
                "root_min_rho",
                "root_min_sigma",
                "classification",
            ],
            rows: report
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.n.to_string(),
                        text(&e.branch),
                        text(&e.kind),
                        num(e.grid_min),
                        num(e.grid_min_rho),
                        num(e.grid_min_sigma),
                        opt(e.root_min),
                        opt(e.root_min_rho),
                        opt(e.root_min_sigma),
                        text(&e.classification),
                    ]
                })
                .collect(),
        },
    }
}

pub fn csv_bytes(table: &Table) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header).map_err(|e| CliError::Io(e.to_string()))?;
    for row in &table.rows {
        w.write_record(row).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

pub fn json_bytes(envelope: &ResultEnvelope) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(envelope).map_err(|e| CliError::Io(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Write through a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("output");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(bytes)?;
    f.sync_all()?;
    drop(f);
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        CliError::from(e)
    })
}

/// Write every requested format. SVG is only produced for traces.
pub fn write_all(envelope: &ResultEnvelope, dir: &Path, formats: &BTreeSet<Format>) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir)?;
    let stem = envelope.command.name();
    let mut written = Vec::new();
    for format in formats {
        let (ext, bytes) = match format {
            Format::Csv => ("csv", csv_bytes(&table(&envelope.payload))?),
            Format::Json => ("json", json_bytes(envelope)?),
            Format::Svg => match &envelope.payload {
                Payload::Trace(curves) => ("svg", svg::plot(curves, &svg::title(&envelope.command)).into_bytes()),
                _ => continue,
            },
        };
        let path = dir.join(format!("{stem}.{ext}"));
        write_atomic(&path, &bytes)?;
        written.push(path);
    }
    Ok(written)
}
