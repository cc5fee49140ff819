use serde_json::Value;
use std::process::{Command, Output};

fn qwhit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwhit")).args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = qwhit(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "1");
    assert_eq!(v["passed"], true);
    v
}

#[test]
fn root_system_a2() {
    let v = json_ok(&["root-system", "--type", "A", "--rank", "2"]);
    let o = &v["outputs"];
    assert_eq!(o["cartan"], serde_json::json!([[2, -1], [-1, 2]]));
    assert_eq!(o["cayley"], serde_json::json!([["0", "1"], ["-1", "0"]]));
    assert_eq!(o["normal_ordering"], serde_json::json!([[1, 0], [1, 1], [0, 1]]));
    for key in ["series", "rank", "pi", "epsilon", "orbits"] {
        assert!(!o[key].is_null(), "{}", key);
    }
}

#[test]
fn cayley_and_orbits() {
    let v = json_ok(&["cayley", "--type", "B", "--rank", "2", "--pi", "2,1", "--s-sym", "[[1,0],[0,2]]"]);
    assert_eq!(v["outputs"]["pi"], serde_json::json!([2, 1]));
    let v = json_ok(&["orbits", "--type", "D", "--rank", "4"]);
    assert_eq!(v["outputs"]["orbits"].as_array().unwrap().len(), 4);
}

#[test]
fn qbinom_scan() {
    let v = json_ok(&["qbinom-scan", "--m", "3"]);
    assert_eq!(v["outputs"]["vanishing_c"], serde_json::json!([-2, 0, 2]));
}

#[test]
fn serre_check_g2() {
    let v = json_ok(&["serre-check", "--type", "G", "--rank", "2"]);
    assert_eq!(v["outputs"]["all_zero"], true);
    assert!(v["outputs"]["identities_checked"].as_u64().unwrap() > 0);
}

#[test]
fn casimir_and_whittaker() {
    let v = json_ok(&["casimir", "--type", "A", "--rank", "1", "--rep", "V1"]);
    let mons = v["outputs"]["casimir"].as_array().unwrap();
    assert!(mons.iter().all(|m| m.get("coeff").is_some() && m.get("lambda").is_some()));
    let v = json_ok(&["whittaker", "--type", "A", "--rank", "2", "--chi", "1,2"]);
    assert_eq!(v["outputs"]["generators"].as_array().unwrap().len(), 2);
}

#[test]
fn toda_commute() {
    let v = json_ok(&[
        "toda",
        "--type",
        "A",
        "--rank",
        "2",
        "--chi",
        "1,1",
        "--chibar",
        "1,1",
        "--check-commute",
    ]);
    assert_eq!(v["outputs"]["commutators_zero"], true);
    assert_eq!(v["outputs"]["closed_form"]["matches_m1_with_opposite_potential_sign"], true);
}

#[test]
fn cross_section_sl2_example() {
    let v = json_ok(&["cross-section", "--n", "2", "--matrix", "[[1,0],[1,1]]"]);
    assert_eq!(v["outputs"]["slice"], serde_json::json!([["2", "-1"], ["1", "0"]]));
    let v = json_ok(&["cross-section", "--n", "4", "--seed", "3"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn kostant_gstar_rmatrix() {
    let v = json_ok(&["kostant-section", "--n", "2", "--b", "[[\"3/2\",0],[0,\"-3/2\"]]"]);
    assert_eq!(v["outputs"]["a"], serde_json::json!([["1", "-3/2"], ["0", "1"]]));
    assert_eq!(v["outputs"]["f_plus_x"], serde_json::json!([["0", "9/4"], ["1", "0"]]));
    let v = json_ok(&["gstar", "--n", "2", "--x", "[2,\"1/2\"]"]);
    assert_eq!(v["outputs"]["u_in_cell"], true);
    json_ok(&["gstar", "--n", "3", "--trials", "10"]);
    json_ok(&["rmatrix-check", "--n", "3", "--trials", "5"]);
}

#[test]
fn deterministic_given_seed() {
    let a = qwhit(&["cross-section", "--n", "3", "--seed", "11"]);
    let b = qwhit(&["cross-section", "--n", "3", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let c = qwhit(&["cross-section", "--n", "3", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(qwhit(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(qwhit(&["root-system", "--rank", "2", "--pi", "1,1"]).status.code(), Some(2));
    assert_eq!(qwhit(&["root-system", "--type", "Q"]).status.code(), Some(2));
    assert_eq!(qwhit(&["cross-section", "--n", "2", "--matrix", "[[1,2]"]).status.code(), Some(2));
    let out = qwhit(&["cross-section", "--n", "2", "--matrix", "[[1,0],[0,1]]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("in_cell"));
}

#[test]
fn acceptance_subsets_and_out_file() {
    let dir = std::env::temp_dir().join(format!("qwhit-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = qwhit(&["acceptance", "--suite", "1,2,12", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["outputs"]["passed"], 3);
    assert!(v.get("elapsed_ms").is_none());
    let out = qwhit(&["acceptance", "--suite", "7"]);
    assert_eq!(out.status.code(), Some(1));
    let timed = qwhit(&["qbinom-scan", "--m", "2", "--timing"]);
    let v: Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(v.get("elapsed_ms").is_some());
    std::fs::remove_dir_all(&dir).ok();
}
