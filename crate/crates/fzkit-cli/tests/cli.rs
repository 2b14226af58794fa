//! End-to-end runs of the `fzkit` binary.

use std::process::{Command, Output};

fn fzkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fzkit")).args(args).env_remove("FZKIT_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cxjac_volume_at_zero() {
    let o = fzkit(&["volume", "--family", "cxjac", "--s", "1/2", "--t", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "3/4\n");
}

#[test]
fn ccc_unit_body_is_a_tetrahedron() {
    let o = fzkit(&["body", "--family", "ccc", "--d", "1,1,1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["dim"], 3);
}

#[test]
fn off_export_header() {
    let o = fzkit(&["body", "--family", "cxp2", "--a", "3", "--b", "2", "--format", "off"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("OFF"));
    assert!(lines.next().unwrap().starts_with("6 "));
}

#[test]
fn malformed_input_exits_with_two() {
    for args in [
        &["volume", "--family", "cxjac", "--s", "0.5", "--t", "0"][..],
        &["volume", "--family", "ccc", "--d", "1,2,3", "--t", "0"],
        &["volume", "--family", "cxjac", "--t", "0"],
        &["volume", "--family", "cxp2", "--a", "1", "--b", "1", "--t", "3"],
        &["glue", "--family", "ccc"],
        &["body", "--family", "cxjac", "--s", "1/2", "--format", "csv"],
        &["frobnicate"],
    ] {
        let o = fzkit(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_fzkit"))
        .args(["volume", "--family", "cxjac", "--s", "1/2", "--t", "0"])
        .env("FZKIT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweeps_are_deterministic_across_thread_counts() {
    let args = ["slice", "--family", "cxp2", "--a", "3", "--b", "2", "--samples", "5"];
    let one = Command::new(env!("CARGO_BIN_EXE_fzkit")).args(args).env("FZKIT_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_fzkit")).args(args).env("FZKIT_THREADS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert!(stdout(&one).starts_with("t,area\n0,0\n"));
}

#[test]
fn surface_zariski_from_builtin_model() {
    let o = fzkit(&["zariski", "--model", "genus2_jacobian", "--class", "1,-7/5"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["positive"], serde_json::json!(["3/5", "-4/5"]));
    assert_eq!(v["negative"]["Rbar"], "1/10");
}

#[test]
fn family_decomposition_and_seshadri() {
    let o = fzkit(&["zariski", "--family", "cxp2", "--a", "3", "--b", "2", "--t", "5/2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["t"], "5/2");
    let o = fzkit(&["seshadri", "--family", "cxjac", "--s", "1/2", "--format", "text"]);
    assert_eq!(stdout(&o), "1/2\nstrict 1/2 59/126\n");
}

#[test]
fn cone_output_has_invariants() {
    let o = fzkit(&["cone", "--family", "cxjac", "--s", "1/2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["invariants"]["mu"], "5/4");
}

#[test]
fn check_tier_passes_and_repeats_byte_for_byte() {
    let a = fzkit(&["check", "--tier", "surfaces"]);
    let b = fzkit(&["check", "--tier", "surfaces"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("3 of 3 criteria passed\n"));
    assert_eq!(fzkit(&["check", "--tier", "nonsense"]).status.code(), Some(2));
}

#[test]
fn full_check_exits_zero() {
    let o = fzkit(&["check"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("[PASS]")).count(), 10);
}
