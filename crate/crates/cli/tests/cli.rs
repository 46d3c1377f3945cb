//! End-to-end tests of the binary: golden outputs, the exit-code table, and
//! byte-identical reruns.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    path.to_str().unwrap().to_owned()
}

fn ghkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("utf-8 output")
}

#[test]
fn gh_on_identical_spaces_is_zero_with_identity_witness() {
    let out = ghkit(&[
        "gh",
        "--space-x",
        &data("two_d1.msp"),
        "--space-y",
        &data("two_d1.msp"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "value 0.0000000000000000e0\n\
         method branchAndBound\n\
         nodes 7\n\
         witness\n\
         0 0\n\
         1 1\n"
    );
}

#[test]
fn gh_on_stretched_two_point_spaces_is_one() {
    let out = ghkit(&[
        "gh",
        "--space-x",
        &data("two_d1.msp"),
        "--space-y",
        &data("two_d3.msp"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "value 1.0000000000000000e0\n\
         method branchAndBound\n\
         nodes 7\n\
         witness\n\
         0 0\n\
         1 1\n"
    );
}

#[test]
fn onesided_pair_output() {
    let out = ghkit(&[
        "onesided",
        "--space-x",
        &data("two_d1.msp"),
        "--space-y",
        &data("two_d3.msp"),
        "--map",
        &data("id2.map"),
        "--map-g",
        &data("id2.map"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "minus 0.0000000000000000e0\nplus 2.0000000000000000e0\n"
    );
}

#[test]
fn ghclass_inverse_pair_self_distance_is_zero() {
    let out = ghkit(&[
        "ghclass",
        "--space-x",
        &data("line5.msp"),
        "--space-y",
        &data("line5.msp"),
        "--class",
        "inversePair",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.starts_with("value 0.0000000000000000e0\nmethod branchAndBound\n"));
    assert!(text.contains("witness\n0 0\n1 1\n2 2\n3 3\n4 4\n"));
}

#[test]
fn build_bijection_golden_with_seed() {
    let args = [
        "build-bijection",
        "--space-x",
        &data("line8.msp"),
        "--space-y",
        &data("line8.msp"),
        "--map",
        &data("near8.map"),
        "--map-g",
        &data("near8.map"),
        "--eps",
        "1.5",
        "--seed",
        "7",
    ];
    let out = ghkit(&args);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "value 1.0000000000000000e0\n\
         method construction\n\
         nodes 16\n\
         witness\n\
         0 0\n\
         1 1\n\
         2 2\n\
         3 4\n\
         4 3\n\
         5 5\n\
         6 7\n\
         7 6\n\
         classI 0 1 2 3 4 5 6 7\n\
         classII 0 1 2 3 4 5 6 7\n\
         disTilde 2.0000000000000000e0\n\
         bound 5.0000000000000000e0\n"
    );
    // byte-identical rerun
    let again = ghkit(&args);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn pipeline_golden_with_target() {
    let args = [
        "pipeline",
        "--space-x",
        &data("line8.msp"),
        "--space-y",
        &data("line12.msp"),
        "--map",
        &data("embed8in12.map"),
        "--eps",
        "1.5",
        "--target",
        &data("window8.idx"),
    ];
    let out = ghkit(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.starts_with("value 0.0000000000000000e0\n"));
    assert!(text.contains("witness\n0 2\n1 3\n2 4\n3 5\n4 6\n5 7\n6 8\n7 9\n"));
    assert!(text.contains("disTilde 0.0000000000000000e0\n"));
    assert!(text.contains("rho 0.0000000000000000e0\n"));
    assert!(text.ends_with("eps 2.0000000000000000e0\n"));
    let again = ghkit(&args);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn gh_reruns_are_byte_identical() {
    let args = [
        "gh",
        "--space-x",
        &data("line5.msp"),
        "--space-y",
        &data("line8.msp"),
    ];
    let a = ghkit(&args);
    let b = ghkit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn validate_accepts_a_point_cloud_and_a_matrix() {
    for file in ["two_d1.msp", "tri.pts", "line5.msp"] {
        let out = ghkit(&["validate", "--space-x", &data(file)]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        assert_eq!(stdout_of(&out), "valid\n");
    }
}

#[test]
fn validate_rejects_asymmetry_with_exit_2() {
    let out = ghkit(&["validate", "--space-x", &data("asym.msp")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_of(&out), "asymmetry at (0, 1): 1 vs 2\n");
    assert!(!out.stderr.is_empty());
}

#[test]
fn invalid_space_is_rejected_unless_no_validate() {
    let out = ghkit(&[
        "gh",
        "--space-x",
        &data("asym.msp"),
        "--space-y",
        &data("two_d1.msp"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = ghkit(&[
        "gh",
        "--space-x",
        &data("asym.msp"),
        "--space-y",
        &data("two_d1.msp"),
        "--no-validate",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn capacity_error_is_exit_3() {
    let out = ghkit(&[
        "gh",
        "--space-x",
        &data("line12.msp"),
        "--space-y",
        &data("line12.msp"),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = ghkit(&[
        "gh",
        "--space-x",
        &data("line12.msp"),
        "--space-y",
        &data("line12.msp"),
        "--cap",
        "12",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exhausted_construction_is_exit_4() {
    let out = ghkit(&[
        "build-bijection",
        "--space-x",
        &data("two_d1.msp"),
        "--space-y",
        &data("two_d1.msp"),
        "--map",
        &data("const2.map"),
        "--map-g",
        &data("const2.map"),
        "--eps",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn usage_errors_are_exit_64() {
    let out = ghkit(&["gh", "--space-x", &data("two_d1.msp"), "--bogus"]);
    assert_eq!(out.status.code(), Some(64));
    let out = ghkit(&["gh", "--space-x", &data("two_d1.msp")]);
    assert_eq!(out.status.code(), Some(64));
    let out = ghkit(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn output_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join("ghkit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("result.txt");
    let direct = ghkit(&[
        "gh",
        "--space-x",
        &data("two_d1.msp"),
        "--space-y",
        &data("two_d3.msp"),
    ]);
    let to_file = ghkit(&[
        "gh",
        "--space-x",
        &data("two_d1.msp"),
        "--space-y",
        &data("two_d3.msp"),
        "--output",
        file.to_str().unwrap(),
    ]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&file).unwrap(), direct.stdout);
}

#[test]
fn quasi_inverse_output_feeds_back_as_a_mapping() {
    let dir = std::env::temp_dir().join("ghkit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let g_file = dir.join("g.map");
    let out = ghkit(&[
        "quasi-inverse",
        "--space-x",
        &data("two_d1.msp"),
        "--space-y",
        &data("two_d3.msp"),
        "--map",
        &data("id2.map"),
        "--output",
        g_file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = ghkit(&[
        "codis",
        "--space-x",
        &data("two_d1.msp"),
        "--space-y",
        &data("two_d3.msp"),
        "--map",
        &data("id2.map"),
        "--map-g",
        g_file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "value 2.0000000000000000e0\n");
}

#[test]
fn selftest_passes() {
    let out = ghkit(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout_of(&out));
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}
