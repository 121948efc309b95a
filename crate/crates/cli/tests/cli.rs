use std::process::{Command, Output};

use serde_json::Value;

fn tpqr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpqr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_passes_on_grid_triple() {
    let out = tpqr(&["check", "--p", "3", "--q", "3", "--r", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["schema"], "tpqr/check/v1");
    assert!(v["version"].is_string());
}

#[test]
fn domain_errors_exit_one_with_error_report() {
    let out = tpqr(&["dual", "--cycle", "2,2,2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = report(&out);
    assert_eq!(v["schema"], "tpqr/error/v1");
    assert_eq!(v["error"]["kind"], "NotHyperbolic");

    let out = tpqr(&["mutate", "--p", "3", "--q", "3", "--r", "3", "--word", "99"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["kind"], "PositionOutOfRange");

    let out = tpqr(&["triangle", "--p", "2", "--q", "2", "--r", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["kind"], "NotACycleOfRationalCurves");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["k0", "--p", "0", "--q", "1", "--r", "1"][..],
        &["k0", "--p", "3", "--q", "3"],
        &["build", "--p", "3", "--q", "3", "--r", "3", "--side", "nowhere"],
        &["mutate", "--p", "3", "--q", "3", "--r", "3", "--word", "x"],
        &["mutate", "--p", "3", "--q", "3", "--r", "3", "--word", "0"],
        &["frobnicate"],
    ] {
        let out = tpqr(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn triangle_without_dual() {
    let out = tpqr(&["triangle", "--p", "3", "--q", "3", "--r", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["hyperbolic"], false);
    assert!(v["dual"].is_null());
}

#[test]
fn build_is_deterministic() {
    for side in ["fukaya", "sheaf"] {
        let args = ["build", "--p", "4", "--q", "4", "--r", "2", "--side", side];
        assert_eq!(tpqr(&args).stdout, tpqr(&args).stdout);
    }
}

#[test]
fn k0_matches_golden() {
    let golden = include_str!("golden/k0_3_3_3.json");
    let out = tpqr(&["k0", "--p", "3", "--q", "3", "--r", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
    let v: Value = serde_json::from_str(golden).unwrap();
    assert_eq!(v["free_rank"], 10);
    assert_eq!(v["torsion"], serde_json::json!([]));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("tpqr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dual.json");
    let out = tpqr(&["dual", "--cycle", "3,2,2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["dual"]["entries"], serde_json::json!([5]));
    std::fs::remove_dir_all(&dir).unwrap();
}
