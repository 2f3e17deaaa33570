use std::path::Path;
use std::process::{Command, Output};

use jdisk::cli::RunManifest;

fn jdisk(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jdisk"))
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .expect("binary runs")
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let head: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = head.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(k).unwrap().to_string()).collect()
}

#[test]
fn norm_of_the_unit_disk_at_the_origin() {
    let dir = tempfile::tempdir().unwrap();
    let out = jdisk(dir.path(), &["norm", "--chart", "unit-disk", "--p", "0", "--v", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let value: f64 = stdout.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!((value - 1.0).abs() <= 0.01, "{stdout}");
    let m = RunManifest::read(&dir.path().join("manifest.json")).unwrap();
    assert_eq!(m.command, "norm");
    assert!(m.outputs.iter().any(|o| o.ends_with("norm.csv")));
    let json = serde_json::to_string(&m).unwrap();
    assert_eq!(serde_json::from_str::<RunManifest>(&json).unwrap(), m);
}

#[test]
fn flat_distance_is_tiny() {
    let dir = tempfile::tempdir().unwrap();
    let out = jdisk(
        dir.path(),
        &[
            "dist", "--chart", "std-C2", "--p", "0,0", "--q", "1,1", "--method", "both",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("dist.csv")).unwrap();
    let values: Vec<f64> = column(&csv, "value").iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(values.len(), 2);
    assert!(values.iter().all(|&d| d <= 1e-3 * 1.5), "{values:?}");
}

#[test]
fn validate_rejects_a_structure_that_does_not_square_to_minus_one() {
    let dir = tempfile::tempdir().unwrap();
    let chart = dir.path().join("bad.toml");
    std::fs::write(
        &chart,
        r#"name = "bad"
n = 1
domain = [1.0]
holder_lambda = 0.5

[[j_offset]]
row = 0
col = 0
terms = [{ z = [0], zbar = [0], re = 0.5 }]
"#,
    )
    .unwrap();
    let out = jdisk(
        &dir.path().join("out"),
        &["validate", "--chart", chart.to_str().unwrap()],
    );
    let code = out.status.code().unwrap();
    assert_ne!(code, 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("not almost complex"), "{stdout}");
}

#[test]
fn scan_of_flat_space_reports_nonhyperbolic_evidence() {
    let dir = tempfile::tempdir().unwrap();
    let out = jdisk(
        dir.path(),
        &["scan", "--chart", "std-C2", "--rings", "1", "--directions", "2"],
    );
    assert_eq!(out.status.code(), Some(1));
    let csv = std::fs::read_to_string(dir.path().join("scan.csv")).unwrap();
    assert!(csv.contains("nonhyperbolic-evidence"));
}

#[test]
fn unknown_chart_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = jdisk(dir.path(), &["norm", "--chart", "klein-bottle", "--p", "0", "--v", "1"]);
    assert_eq!(out.status.code(), Some(64));
}
