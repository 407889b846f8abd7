//! End-to-end tests for the command-line binary: output shapes, exit
//! codes, formats and file output.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thompson-metric"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn len_of_generator_is_one() {
    let out = run(&["len", "-p", "1", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn len_of_empty_word_is_zero() {
    let out = run(&["len", "-p", "1", ""]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn len_of_squared_generator_at_p2() {
    let out = run(&["len", "-p", "2", "0 0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn len_accepts_diagram_input() {
    let out = run(&["len", "p=1;neg=((..).);pos=(.(..))"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn len_explain_prints_per_caret_rows() {
    let out = run(&["len", "-p", "1", "0", "--explain"]);
    let text = stdout(&out);
    assert!(text.starts_with("1\n"));
    assert!(text.contains("(L_e, L_e)"));
    assert!(text.lines().count() > 2);
}

#[test]
fn len_json_has_schema() {
    let out = run(&["len", "-p", "1", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], "thompson-metric/1");
    assert_eq!(v["length"], 1);
}

#[test]
fn malformed_word_exits_2() {
    let out = run(&["len", "-p", "1", "0 ^garbage"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conflicting_p_exits_2() {
    let out = run(&["len", "-p", "2", "p=1;neg=((..).);pos=(.(..))"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mul_of_inverse_pair_is_identity() {
    let out = run(&["mul", "-p", "1", "0", "0^-1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "p=1;neg=.;pos=.\n");
}

#[test]
fn inv_swaps_trees() {
    let out = run(&["inv", "-p", "1", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "p=1;neg=(.(..));pos=((..).)\n");
}

#[test]
fn reduce_cancels_a_common_caret() {
    let out = run(&["reduce", "p=1;neg=((..)(..));pos=((..)(..))"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "p=1;neg=.;pos=.\n");
}

#[test]
fn map_prints_breakpoints() {
    let out = run(&["map", "-p", "1", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(0,0) (1/4,1/2) (1/2,3/4) (1,1)\n");
}

#[test]
fn map_csv_rows() {
    let out = run(&["map", "-p", "1", "0", "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.starts_with("x,y\n0,0\n"));
    assert!(text.ends_with("1,1\n"));
}

#[test]
fn verify_metric_small_ball_passes() {
    let out = run(&["verify-metric", "-p", "1", "-r", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["ball_size"], 53);
    assert_eq!(v["sphere_sizes"], serde_json::json!([1, 4, 12, 36]));
}

#[test]
fn verify_metric_radius_zero_is_trivial() {
    let out = run(&["verify-metric", "-p", "1", "-r", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ball size 1"));
}

#[test]
fn verify_metric_cap_exits_3() {
    let out = run(&["verify-metric", "-p", "1", "-r", "4", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn census_small_radius_is_empty_and_passes() {
    let out = run(&["deadend-census", "-p", "1", "-r", "5", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], "thompson-metric/1");
    assert_eq!(v["dead_ends"].as_array().unwrap().len(), 0);
}

#[test]
fn depth_of_generator_reports_not_dead_end() {
    let out = run(&["depth", "-p", "1", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "not a dead end\n");
}

#[test]
fn depth_of_known_dead_end_is_two() {
    // Smallest dead end in the radius-12 ball at p=1 (length 11).
    let key = "p=1;neg=((.(..))((..)(.((..).))));pos=((((..).).)(.(.(.(..)))))";
    let out = run(&["depth", key]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn seesaw_small_swing_passes() {
    let out = run(&["seesaw", "-p", "1", "-m", "4", "-n", "4", "-k", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(text.contains("word 0 0 0 1 12 11^-1 9^-1 7^-1 5^-1 0^-1 0^-1 0^-1 0^-1"));
}

#[test]
fn seesaw_profile_as_csv() {
    let out = run(&["seesaw", "-p", "1", "-m", "4", "-n", "4", "-k", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("q,length\n"));
    // Swing shape: the q = 0 row carries the maximum.
    assert!(text.contains("0,21\n"));
    assert!(text.contains("1,20\n"));
    assert!(text.contains("-1,20\n"));
}

#[test]
fn seesaw_invalid_swing_exits_2() {
    let out = run(&["seesaw", "-p", "1", "-m", "2", "-n", "2", "-k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn geodesic_word_has_reported_length() {
    let out = run(&["geodesic", "-p", "1", "0 0 1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["length"], 3);
}

#[test]
fn diverge_inverse_pair() {
    let out = run(&["diverge", "-p", "1", "0", "0^-1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join("thompson-metric-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("len.txt");
    let out = run(&["len", "-p", "1", "0", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "1\n");
    std::fs::remove_file(&path).ok();
}
