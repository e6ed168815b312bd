use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pathinfo_cli::config_file::to_json;
use pathinfo_cli::families::{family_points, Family, FamilySpec};
use pathinfo_core::sampling::{IntRange, PriorMode};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_pathinfo");

const OVERLAP: &str =
    r#"{"probs":[0.5,0.5],"detectors":{"dim":2,"states":[[[1,0],[0,0]],[[0.6,0],[0.8,0]]]}}"#;

const ORTHONORMAL: &str = r#"{"probs":[0.2,0.3,0.5],"detectors":{"dim":3,"states":[
  [[1,0],[0,0],[0,0]],
  [[0,0],[1,0],[0,0]],
  [[0,0],[0,0],[1,0]]]}}"#;

fn pathinfo(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn analyze(dir: &Path, name: &str, json: &str, extra: &[&str]) -> (i32, Value) {
    let path = dir.join(name);
    fs::write(&path, json).unwrap();
    let mut args = vec!["--command", "analyze", "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = pathinfo(&args);
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report)
}

#[test]
fn analyze_orthonormal_detectors() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = analyze(dir.path(), "on.json", ORTHONORMAL, &[]);
    assert_eq!(code, 0);
    assert!(r["duality"]["gap_l1"].as_f64().unwrap().abs() <= 1e-12);
    assert!(r["duality"]["gap_entropic"].as_f64().unwrap().abs() <= 1e-12);
    assert_eq!(r["x"].as_f64().unwrap(), 0.0);
}

#[test]
fn analyze_overlapping_pair() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = analyze(dir.path(), "ov.json", OVERLAP, &[]);
    assert_eq!(code, 0);
    let d = &r["duality"];
    assert!((d["ps_bound"].as_f64().unwrap() - 0.9).abs() <= 1e-12);
    assert!((d["x"].as_f64().unwrap() - 0.3).abs() <= 1e-12);
    assert!(d["gap_l1"].as_f64().unwrap().abs() <= 1e-12);
    assert_eq!(r["seed"], 42);
    for key in [
        "spectra",
        "c_l1",
        "pgm_success",
        "c_rel",
        "holevo",
        "accessible_info_lower_bound",
        "l1_report",
        "entropic_report",
    ] {
        assert!(!r[key].is_null(), "missing {key}");
    }
}

#[test]
fn malformed_and_invalid_input_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = analyze(
        dir.path(),
        "bad.json",
        r#"{"probs": [0.5, 0.5], "detectors": "#,
        &[],
    );
    assert_eq!(code, 2);
    let unnormalized = r#"{"probs":[0.5,0.7],"detectors":{"dim":1,"states":[[[1,0]],[[1,0]]]}}"#;
    assert_eq!(analyze(dir.path(), "un.json", unnormalized, &[]).0, 2);
    let missing = pathinfo(&["--command", "analyze", "--input", "/nonexistent/cfg.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&pathinfo(&["--command", "analyze"]).stderr).to_string();
    assert!(stderr.contains("--input"));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\n  \"probs\": [0.5, 0.5],\n  \"detectors\": {\"dim\": 1, \"states\": [[[1, 0]], [[1 0]]]}\n}").unwrap();
    let out = pathinfo(&["--command", "analyze", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn verify_single_config_smoke() {
    let out = pathinfo(&[
        "--command",
        "verify",
        "--samples",
        "1",
        "--n",
        "2",
        "--d",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("total_configs=1 seed=42"));
    assert!(text.contains("rng=chacha8-keyed-v1"));
}

#[test]
fn tiny_tolerance_flags_float_noise() {
    // two-path configs saturate the l1 relation, so rounding alone pushes some gaps
    // below -1e-30
    let out = pathinfo(&[
        "--command",
        "verify",
        "--samples",
        "20",
        "--n",
        "2",
        "--d",
        "1..2",
        "--tolerance",
        "1e-30",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text.lines().find(|l| l.starts_with("violation ")).unwrap();
    let record: Value = serde_json::from_str(&line["violation ".len()..]).unwrap();
    assert!(record["config"]["probs"].is_array());
    assert_eq!(record["seed"], 42);
}

#[test]
fn bad_flags_exit_2() {
    for args in [
        &["--command", "sweep", "--family", "spiral"][..],
        &["--command", "sweep"],
        &["--command", "verify", "--tolerance", "0"],
        &["--command", "verify", "--n", "1"],
        &["--command", "verify", "--n", "5..3"],
        &["--command", "frobnicate"],
    ] {
        assert_eq!(pathinfo(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_writes_csv_with_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let out = pathinfo(&[
        "--command",
        "verify",
        "--samples",
        "2",
        "--n",
        "2..3",
        "--d",
        "1..2",
        "--seed",
        "9",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("# pathinfo ") && lines[0].contains("seed=9"));
    assert_eq!(lines[1], pathinfo_cli::report::CSV_HEADER);
    assert_eq!(lines.len(), 2 + 8);
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(2)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

/// Every row of every family, re-analyzed from its config file, reproduces the row.
#[test]
fn sweep_rows_round_trip_through_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let fields = [
        "x",
        "ps_bound",
        "lhs_l1",
        "rhs_l1",
        "gap_l1",
        "c_rel",
        "mi",
        "h_priors",
        "gap_entropic",
    ];
    for (family, extra) in [
        (Family::OverlapScan, vec!["--steps", "6"]),
        (Family::PriorScan, vec!["--steps", "5", "--overlap", "0.3"]),
        (
            Family::DimensionScan,
            vec!["--n", "3", "--d", "1..4", "--seed", "5"],
        ),
    ] {
        let mut args = vec!["--command", "sweep", "--family", family.name()];
        args.extend_from_slice(&extra);
        let out = pathinfo(&args);
        assert_eq!(out.status.code(), Some(0));
        let rows = csv_rows(&String::from_utf8_lossy(&out.stdout));

        let spec = FamilySpec {
            family,
            steps: if family == Family::OverlapScan { 6 } else { 5 },
            overlap: 0.3,
            n: 3,
            dims: IntRange::new(1, 4).unwrap(),
            prior_mode: PriorMode::Dirichlet(1.0),
            seed: if family == Family::DimensionScan {
                5
            } else {
                42
            },
        };
        let points = family_points(&spec).unwrap();
        assert_eq!(points.len(), rows.len());
        for (point, row) in points.iter().zip(&rows) {
            assert_eq!(point.param, row[0]);
            let seed = spec.seed.to_string();
            let (code, r) = analyze(
                dir.path(),
                "row.json",
                &to_json(&point.config),
                &["--seed", &seed],
            );
            assert_eq!(code, 0);
            for (k, field) in fields.iter().enumerate() {
                let emitted: f64 = row[k + 1].parse().unwrap();
                let again = r["duality"][field].as_f64().unwrap();
                assert!(
                    (emitted - again).abs() <= 1e-12,
                    "{family:?} {field}: {emitted} vs {again}"
                );
            }
        }
    }
}

#[test]
fn prior_scan_with_orthogonal_detectors() {
    let out = pathinfo(&[
        "--command",
        "sweep",
        "--family",
        "prior-scan",
        "--steps",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for row in csv_rows(&String::from_utf8_lossy(&out.stdout)) {
        let v: Vec<f64> = row.iter().map(|f| f.parse().unwrap()).collect();
        assert_eq!(v[1], 0.0);
        assert!((v[2] - 1.0).abs() <= 1e-12);
        assert!(v[5].abs() <= 1e-12);
    }
}

#[test]
fn dimension_scan_relations_hold() {
    let out = pathinfo(&[
        "--command",
        "sweep",
        "--family",
        "dimension-scan",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["seed"], 42);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for r in rows {
        assert!(r["gap_l1"].as_f64().unwrap() >= -1e-9);
        assert!(r["gap_entropic"].as_f64().unwrap() >= -1e-9);
        assert_eq!(r["n_paths"], 4);
    }
}
