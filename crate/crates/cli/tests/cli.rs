use std::path::Path;
use std::process::Command;

use relmod::certificate::file::{CertificateFile, ComplexFile};
use relmod_cli::{run, Outcome, EXIT_FALSIFIED, EXIT_OK, EXIT_USAGE};

fn relmod(args: &[&str]) -> Outcome {
    run(std::iter::once("relmod").chain(args.iter().copied()))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn emit_certificate(dir: &Path, r: &str, name: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    let out = relmod(&["certificate", "--r", r, "--out", path_str(&path)]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    path
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_relmod");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["verify", "--r", "2,3"]), Some(0));
    assert_eq!(code(&["verify", "--r", "2,4,5"]), Some(2));
    assert_eq!(code(&["normalize", "a1 x2"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["check-cert", "/nonexistent/cert.json"]), Some(2));
}

#[test]
fn non_coprime_parameters_are_named() {
    let out = relmod(&["verify", "--r", "2,4,5"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("r[0]=2 and r[1]=4 not coprime"), "{}", out.stderr);
    let out = relmod(&["verify", "--r", "1"]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn normalize_examples() {
    let norm = |r: &str, w: &str| {
        let out = relmod(&["normalize", "--r", r, w]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        out.stdout.trim().to_string()
    };
    assert_eq!(norm("2,3", "a1 a1"), "e");
    assert_eq!(norm("2,3", "a1 b1 a1^-1"), "b1");
    assert_eq!(norm("2,3", "a2^5 b2^-1"), "a2^2 b2^-1");
    assert_eq!(norm("2,3", "a2 b2 a2^-1 b2^-1"), "e");
    assert_eq!(norm("2,3", "a2 b1 a2^-1"), "a2 b1 a2^2");
}

#[test]
fn normalize_parse_error_reports_column() {
    let out = relmod(&["normalize", "--r", "2,3", "a1 x2"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("column 4"), "{}", out.stderr);
    let out = relmod(&["normalize", "--r", "2,3", "b1 a3"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("column 4"), "{}", out.stderr);
}

#[test]
fn verify_skips_chain_level_checks_for_one_factor() {
    let out = relmod(&["verify", "--r", "7"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert_eq!(out.stdout.matches("SKIPPED").count(), 3, "{}", out.stdout);
    assert!(!out.stdout.contains("FAIL"));
}

#[test]
fn verify_json_lists_every_check() {
    let out = relmod(&["verify", "--r", "2,3,5", "--format", "json"]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 11);
    assert!(checks.iter().all(|c| c["status"] == "PASS"), "{}", out.stdout);
}

#[test]
fn certificates_are_accepted_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for r in ["2,3,5", "3,4,5,7,11"] {
        let first = emit_certificate(dir.path(), r, "a.json");
        let a = std::fs::read(&first).unwrap();
        let second = emit_certificate(dir.path(), r, "b.json");
        assert_eq!(a, std::fs::read(&second).unwrap(), "r=({r})");
        let out = relmod(&["check-cert", path_str(&first)]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
        assert!(out.stdout.starts_with("ACCEPTED"));
    }
}

#[test]
fn certificate_roundtrips_through_json() {
    let out = relmod(&["certificate", "--r", "2,3,5"]);
    let file = CertificateFile::from_json(&out.stdout).unwrap();
    assert_eq!(file.to_json(), out.stdout);
    assert_eq!(file.to_certificate().unwrap().to_json(), out.stdout);
}

#[test]
fn hand_corrupted_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_certificate(dir.path(), "2,3", "c.json");
    let mut file = CertificateFile::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    file.t[0] = "10".parse().unwrap();
    std::fs::write(&path, file.to_json()).unwrap();

    let out = relmod(&["check-cert", path_str(&path)]);
    assert_eq!(out.code, EXIT_FALSIFIED);
    assert!(out.stdout.starts_with("REJECTED"), "{}", out.stdout);
    assert!(out.stdout.contains("CRT"), "{}", out.stdout);

    let out = relmod(&["check-cert", path_str(&path), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["accepted"], false);
    assert!(v["failed_identity"].as_str().unwrap().starts_with("CRT"));
}

#[test]
fn malformed_certificate_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"version\": \"relmod-certificate/1\"").unwrap();
    assert_eq!(relmod(&["check-cert", path_str(&path)]).code, EXIT_USAGE);

    let good = emit_certificate(dir.path(), "2,3", "good.json");
    let text = std::fs::read_to_string(&good)
        .unwrap()
        .replace("relmod-certificate/1", "other/9");
    std::fs::write(&path, text).unwrap();
    assert_ne!(relmod(&["check-cert", path_str(&path)]).code, EXIT_OK);
}

#[test]
fn complex_export_shape() {
    let out = relmod(&["complex", "--r", "2,3"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let c = ComplexFile::from_json(&out.stdout).unwrap();
    assert_eq!(c.euler_characteristic, 0);
    assert_eq!(c.d1.rows.len(), 4);
    assert_eq!(c.d1.cols.len(), 1);
    assert_eq!((c.d2.rows.len(), c.d2.cols.len()), (4, 4));
    assert_eq!(c.d2.rows, ["D1", "D2", "E1", "E2"]);
    // E rows carry a single nonzero entry, the norm element, in their a column
    assert_eq!(c.d2.entries[2], ["e + a1", "0", "0", "0"]);
    assert_eq!(c.d2.entries[3], ["0", "0", "e + a2 + a2^2", "0"]);
    assert_eq!(c.d3.rows.len(), 1);
    assert_eq!(c.d3.cols.len(), 4);
    assert!(c.p.is_some() && c.q.is_some());
    assert_eq!(c.to_json(), out.stdout);

    let out = relmod(&["complex", "--r", "2,3,5,7"]);
    let c = ComplexFile::from_json(&out.stdout).unwrap();
    assert_eq!(c.euler_characteristic, -2);
    assert_eq!(c.d3.rows.len(), 3);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.txt");
    let out = relmod(&["verify", "--r", "2,3", "--out", path_str(&path)]);
    assert_eq!(out.code, EXIT_OK);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("PASS"));
}
