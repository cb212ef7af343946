//! The binary on the golden fixtures: exit codes and report shape.

use std::process::Command;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_homcolor"))
        .args(args)
        .arg("--no-timing")
        .output()
        .unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn validate_passes_on_corpus() {
    for f in ["heisenberg.alg", "sl2_twisted.alg", "klein.alg", "z_z2_heisenberg_twisted.alg"] {
        let (out, code) = run(&["validate", &fixture(f)]);
        assert_eq!(code, 0, "{out}");
        assert!(out.ends_with("status: pass\n"), "{out}");
        assert!(out.contains("inputs: sha256:"));
    }
}

#[test]
fn split_check_distinguishes_fixtures() {
    assert_eq!(run(&["split-check", &fixture("plane_central.ext")]).1, 1);
    assert_eq!(run(&["split-check", &fixture("plane_split.ext")]).1, 0);
}

#[test]
fn classify_reports_dimension() {
    let (out, code) = run(&["classify", &fixture("plane_split.ext")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("1"), "{out}");
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.alg");
    std::fs::write(&p, "{ \"format_version\": \"1\", ").unwrap();
    let (out, code) = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("error:"), "{out}");
}

#[test]
fn unknown_subcommand_exits_two() {
    assert_eq!(run(&["frobnicate"]).1, 2);
}

#[test]
fn out_flag_writes_canonical_document() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("twisted.alg");
    let (out, code) = run(&[
        "twist",
        &fixture("heisenberg.alg"),
        "--beta",
        &fixture("heisenberg_beta.mat"),
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    let text = std::fs::read_to_string(&p).unwrap();
    assert_eq!(homcolor::io::canonicalize_file(&p).unwrap(), text);
    let (again, code) = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, 0, "{again}");
}
