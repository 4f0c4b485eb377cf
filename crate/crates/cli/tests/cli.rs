use std::path::Path;
use std::process::{Command, Output};

fn run(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracloci"))
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .unwrap()
}

fn rows(path: &Path) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records().map(|x| x.unwrap()).collect()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

#[test]
fn csv_and_json_carry_identical_values() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["trace", "--alpha", "1.8", "--n", "2,3", "--resolution", "12"]);
    assert!(out.status.success());
    let csv = rows(&tmp.path().join("trace.csv"));
    let doc = json(&tmp.path().join("trace.json"));
    let points: Vec<&serde_json::Value> = doc["payload"]["data"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["points"].as_array().unwrap())
        .collect();
    assert_eq!(csv.len(), points.len());
    assert!(!csv.is_empty());
    for (row, p) in csv.iter().zip(&points) {
        for (col, key) in [(4, "rho"), (5, "sigma"), (6, "h")] {
            let a: f64 = row[col].parse().unwrap();
            assert_eq!(a.to_bits(), p[key].as_f64().unwrap().to_bits(), "{key}");
        }
        assert_eq!(row[2].parse::<i64>().unwrap(), p["n"].as_i64().unwrap());
    }
}

#[test]
fn svg_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let args = ["--format", "svg", "trace", "--recipe", "fig2a", "--resolution", "30"];
    assert!(run(tmp.path(), &args).status.success());
    let first = std::fs::read(tmp.path().join("trace.svg")).unwrap();
    assert!(run(tmp.path(), &args).status.success());
    let second = std::fs::read(tmp.path().join("trace.svg")).unwrap();
    assert_eq!(first, second);
    assert!(String::from_utf8(first).unwrap().starts_with("<svg"));
}

#[test]
fn empty_range_is_a_usage_error_without_output() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("out");
    let out = run(&out_dir, &["trace", "--alpha", "2", "--n", "2", "--rho-range", "0.5,0.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out_dir.exists() || std::fs::read_dir(&out_dir).unwrap().next().is_none());
}

#[test]
fn nonpositive_ratio_rejected_for_ss() {
    let tmp = tempfile::tempdir().unwrap();
    for ratio in ["0", "-1"] {
        let out = run(tmp.path(), &["blueshift", "--ratio", ratio]);
        assert_eq!(out.status.code(), Some(1), "ratio {ratio}");
    }
}

#[test]
fn hermitian_scatter_conserves_flux() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["scatter", "--vr", "1", "--alpha", "1.7", "--emin", "1.5", "--emax", "6", "--points", "25"]);
    assert!(out.status.success());
    let csv = rows(&tmp.path().join("scatter.csv"));
    assert_eq!(csv.len(), 25);
    for row in &csv {
        let t: f64 = row[2].parse().unwrap();
        let r: f64 = row[3].parse().unwrap();
        assert!((t + r - 1.0).abs() < 1e-10, "T + R = {}", t + r);
    }
}

#[test]
fn free_barrier_is_transparent() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["scatter", "--alpha", "1.4", "--points", "10"]);
    assert!(out.status.success());
    for row in rows(&tmp.path().join("scatter.csv")) {
        assert_eq!(row[2].parse::<f64>().unwrap(), 1.0);
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn coarse_survey_is_flagged() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["survey", "--grid", "4x4"]);
    assert!(out.status.success());
    let doc = json(&tmp.path().join("survey.json"));
    assert_eq!(doc["payload"]["data"]["low_resolution"], true);
    assert!(!doc["anomalies"].as_array().unwrap().is_empty());
}

#[test]
fn replay_check_accepts_its_own_output() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(run(tmp.path(), &["scatter", "--vr", "2", "--vi", "-0.3", "--points", "8"]).status.success());
    let stored = tmp.path().join("scatter.json");
    let again = tmp.path().join("again");
    let out = run(&again, &["replay", "--check", stored.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
