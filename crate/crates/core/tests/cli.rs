use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_series-lab"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn run(args: &[&str]) -> (i32, Value, Output) {
    let out = bin().args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, out)
}

#[test]
fn height_of_sqrt2() {
    let (code, v, _) = run(&["height", "T^2-2"]);
    assert_eq!(code, 0);
    let h: f64 = v["h"]["approx"].as_str().unwrap().parse().unwrap();
    assert!((h - 2f64.ln() / 2.0).abs() < 1e-12);
}

#[test]
fn height_of_reducible_picks_factor() {
    let (code, v, _) = run(&["height", "T^3-2T^2-T+2", "--root-index", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["minimal_polynomial"], "T-2");
}

#[test]
fn radical_two_four() {
    let (code, v, _) = run(&["radical", "2", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["degree"], 4);
    assert_eq!(v["subfield_degrees"], serde_json::json!([1, 2, 4]));
}

#[test]
fn minpoly_and_coliou() {
    let (_, v, _) = run(&["minpoly", "T^3-2", "0,1,1", "--root-index", "2"]);
    assert_eq!(v["degree"], 3);
    let (_, v, _) = run(&["coliou", "1/2", "3"]);
    assert_eq!(v["minimal_polynomial"], "4T^3-6T-3");
}

#[test]
fn galois_commands() {
    let (_, v, _) = run(&["galois", "group", "T^4-2"]);
    assert_eq!(v["group"], "D4");
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    let (code, v, _) = run(&[
        "galois",
        "count",
        "--m",
        "2",
        "--X",
        "3",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["sm_count"], 11);
    assert_eq!(std::fs::read_to_string(csv).unwrap().lines().count(), 15);
    let (code, v, _) = run(&["galois", "small-root", "T^2+1"]);
    assert_eq!(code, 1);
    assert_eq!(v["kind"], "domain");
}

#[test]
fn series_commands() {
    let spec = data("liouville.json");
    let spec = spec.to_str().unwrap();
    let (code, v, _) = run(&["series", "validate", spec, "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    let (_, v, _) = run(&["series", "tail", spec, "--alpha", "1/2", "--n", "3"]);
    assert_eq!(v["bound"], "1*2^-23");
    let (_, v, _) = run(&["series", "eval", spec, "--alpha", "1/2", "--bits", "100"]);
    let x: f64 = v["value"]["approx"]
        .as_str()
        .unwrap()
        .split(' ')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((x - 0.765_625_059_604_644_8).abs() < 1e-12);
}

#[test]
fn certificates_verify_in_fresh_process() {
    let dir = tempfile::tempdir().unwrap();
    let spec = data("liouville.json");
    let spec = spec.to_str().unwrap();
    let um = dir.path().join("um.json");
    let scan = dir.path().join("scan.json");
    let ex = dir.path().join("ex.json");
    let cases: [Vec<&str>; 3] = [
        vec![
            "certify",
            "um",
            "--spec",
            spec,
            "--alpha",
            "1/2",
            "--w",
            "3",
            "--m",
            "1",
            "--out",
            um.to_str().unwrap(),
        ],
        vec![
            "certify",
            "scan",
            "--spec",
            spec,
            "--field",
            "2T^2-1",
            "--root-index",
            "1",
            "--alpha",
            "0,1",
            "--deg",
            "2",
            "--coeff-bound",
            "2",
            "--eta",
            "1",
            "--out",
            scan.to_str().unwrap(),
        ],
        vec![
            "certify",
            "exceptions",
            "--spec",
            spec,
            "--deg",
            "1",
            "--out",
            ex.to_str().unwrap(),
        ],
    ];
    for (args, path) in cases.iter().zip([&um, &scan, &ex]) {
        let (code, _, out) = run(args);
        assert_eq!(code, 0, "{}", String::from_utf8_lossy(&out.stdout));
        let (code, v, _) = run(&["certify", "verify", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(v["verified"], true);
    }
}

#[test]
fn tampered_certificate_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let spec = data("liouville.json");
    run(&[
        "certify",
        "um",
        "--spec",
        spec.to_str().unwrap(),
        "--alpha",
        "1/2",
        "--w",
        "3",
        "--m",
        "1",
        "--out",
        cert.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&cert)
        .unwrap()
        .replace("\"n\": 3", "\"n\": 4");
    std::fs::write(&cert, text).unwrap();
    let (code, v, _) = run(&["certify", "verify", cert.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], "recheck failed");
}

#[test]
fn resource_errors_exit_two() {
    let spec = data("liouville.json");
    let spec = spec.to_str().unwrap();
    let (code, v, _) = run(&[
        "certify", "um", "--spec", spec, "--alpha", "1/2", "--w", "3", "--m", "2", "--cap", "3",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["kind"], "resource");
    let (code, _, _) = run(&[
        "certify",
        "scan",
        "--spec",
        spec,
        "--alpha",
        "1/2",
        "--deg",
        "3",
        "--coeff-bound",
        "20",
        "--budget",
        "10",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn domain_errors_exit_one() {
    assert_eq!(run(&["height", "T^2+"]).0, 1);
    assert_eq!(run(&["radical", "0", "3"]).0, 1);
    assert_eq!(
        run(&[
            "certify",
            "exceptions",
            "--spec",
            data("liouville.json").to_str().unwrap(),
            "--deg",
            "0"
        ])
        .0,
        1
    );
    assert_eq!(run(&["certify", "simple", "T^6-2"]).0, 1);
}

#[test]
fn output_is_byte_identical() {
    let a = run(&["galois", "count", "--m", "3", "--X", "2"]).2.stdout;
    let b = run(&["galois", "count", "--m", "3", "--X", "2"]).2.stdout;
    assert_eq!(a, b);
}

#[test]
fn audit_corpus() {
    let (code, v, _) = run(&[
        "audit",
        "heights",
        "--corpus",
        data("audit_corpus.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["violations"], 0);
    assert!(v["checks"].as_u64().unwrap() > 20);
}

#[test]
fn sample_specs_compile() {
    for entry in std::fs::read_dir(data("")).unwrap() {
        let path = entry.unwrap().path();
        if path
            .file_name()
            .unwrap()
            .to_str()
            .unwrap()
            .starts_with("audit")
        {
            continue;
        }
        let (code, _, out) = run(&["series", "validate", path.to_str().unwrap(), "--n", "4"]);
        assert_eq!(
            code,
            0,
            "{}: {}",
            path.display(),
            String::from_utf8_lossy(&out.stdout)
        );
    }
}
