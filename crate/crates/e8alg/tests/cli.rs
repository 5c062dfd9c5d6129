//! The CLI is a thin shell: each command's output equals the corresponding
//! library call, and the exit-code contract holds.

use e8alg::sc::{wedge_sc_file, BasisFile, ScFile};
use e8alg::scalar::{Qi, Rat};
use e8alg::verify::{run_suite, SuiteSpec};
use e8alg::wedge;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_e8alg"))
}

#[test]
fn verify_output_equals_library_report() {
    let out = bin()
        .args(["verify", "--suite", "star-involution"])
        .output()
        .expect("run binary");
    assert!(out.status.success());
    let spec = SuiteSpec {
        suite: "star-involution".into(),
        ..SuiteSpec::default()
    };
    let expected = run_suite(&spec).unwrap().canonical_text();
    assert_eq!(String::from_utf8_lossy(&out.stdout), expected);
}

#[test]
fn fixed_dim_w4_reports_64() {
    let out = bin()
        .args(["verify", "--suite", "fixed-dim", "--auto", "w4"])
        .output()
        .expect("run binary");
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("dimension: 64"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    let out = bin()
        .args(["verify", "--suite", "no-such-suite"])
        .output()
        .expect("run binary");
    assert_eq!(out.status.code(), Some(2));
    // Unknown flags are also usage errors (clap's own exit code is 2).
    let out = bin().args(["verify", "--nope"]).output().expect("run");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_sc_matches_library_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wedge.sc");
    let out = bin()
        .args(["gen-sc", "--model", "wedge", "--out", path.to_str().unwrap()])
        .output()
        .expect("run binary");
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = ScFile::<Qi>::parse(&text).expect("parse");
    assert_eq!(parsed, wedge_sc_file::<Qi>());
}

#[test]
fn fixed_w4_emits_64_reverifiable_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w4.basis");
    let out = bin()
        .args(["fixed", "--auto", "w4", "--out", path.to_str().unwrap()])
        .output()
        .expect("run binary");
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mat = wedge::real_matrix(|el: &wedge::El<Qi>| wedge::w4_apply(el));
    let apply = |v: &[Rat]| mat.mul_vec(v);
    let file = BasisFile::<Rat>::parse(&text, apply).expect("fixedness re-verifies");
    assert_eq!(file.vectors.len(), 64);
    assert_eq!(file.automorphism, "w4");
}
