use std::process::{Command, Output};

use serde_json::Value;

fn qring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qring")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qring(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    qring(args).status.code().unwrap()
}

#[test]
fn info_lines() {
    assert!(stdout(&["info", "R4"]).contains("quandle, involutary, not connected, orbits {0,2},{1,3}"));
    assert!(stdout(&["info", "T1"]).contains("quandle, trivial"));
    assert!(stdout(&["info", "flip4"]).contains("rack, not quandle"));
}

#[test]
fn graded_r3_is_cyclic_of_order_three() {
    let out = stdout(&["graded", "R3", "4"]);
    let lines: Vec<&str> = out.lines().filter(|l| l.starts_with("k=")).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.ends_with("= Z/3")));
}

#[test]
fn graded_r4_and_t3() {
    let out = stdout(&["graded", "R4", "4"]);
    let shapes: Vec<&str> = out.lines().filter_map(|l| l.rsplit(" = ").next()).skip(1).collect();
    assert_eq!(shapes, ["Z + Z/2", "Z/2 + Z/2", "Z/2 + Z/2", "Z/2 + Z/2"]);
    assert!(stdout(&["graded", "T3", "2"]).contains("Delta^2 = 0"));
}

#[test]
fn graded_json_lists_bases() {
    let v = json(&["graded", "R3", "2"]);
    assert_eq!(v["series"][0]["quotient"], "Z/3");
    assert_eq!(v["series"][1]["basis"]["basis"], serde_json::json!([[1, 1, -2], [0, 3, -3]]));
}

#[test]
fn conjecture_reports_without_failing() {
    let v = json(&["conjecture", "3,5,6", "--max-k", "3"]);
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().filter(|r| r["n"] != 6).all(|r| r["pass"] == true));
    assert!(rows.iter().filter(|r| r["n"] == 6).all(|r| r["pass"] == false));
    assert_eq!(code(&["conjecture", "2"]), 2);
}

#[test]
fn partition_of_r4_by_delta_squared() {
    let out = stdout(&["partition", "R4", "--ideal", "delta2"]);
    assert!(out.contains("partition: {0},{1},{2},{3}"));
}

#[test]
fn t2_ideal_example() {
    let v = json(&["ideal", "T2", "--gen", "2,2"]);
    assert_eq!(v["basis"]["basis"], serde_json::json!([[2, 2], [0, 4]]));
    assert_eq!(v["two_sided"], true);
    let v = json(&["partition", "T2", "--gen", "2,2"]);
    assert_eq!(v["subquandles"], serde_json::json!([[0], [1]]));
}

#[test]
fn units_of_t1_over_z() {
    let v = json(&["units", "T1", "--ring", "Z"]);
    assert_eq!(v["units"].as_array().unwrap().len(), 4);
    assert_eq!(v["closed_form"]["agree"], true);
    assert_eq!(json(&["units", "T1", "--ring", "Z", "--box", "5"])["units"].as_array().unwrap().len(), 4);
}

#[test]
fn unit_element_and_split() {
    assert!(stdout(&["units", "T2", "--ring", "Q", "--element", "1/2,0,1"]).contains("is a unit"));
    assert!(stdout(&["units", "T2", "--element", "2,0,1"]).contains("is not a unit"));
    assert_eq!(json(&["units", "T2", "--ring", "Zmod:3", "--split"])["holds"], true);
}

#[test]
fn power_assoc_witness() {
    let out = stdout(&["power-assoc", "R5", "--numeric", "--element", "1,2,0,0,0"]);
    assert!(out.contains("witness u = a0 + 2*a1"));
    assert!(out.contains("coefficient 0: 5 vs 1"));
    let v = json(&["power-assoc", "R5", "--numeric"]);
    assert!(v["numeric"].is_object());
    let v = json(&["power-assoc", "R3", "--symbolic"]);
    assert!(v["symbolic"]["cubic"].is_null());
    assert!(v["symbolic"]["quartic"].is_object());
    assert!(stdout(&["power-assoc", "T3"]).contains("no numeric witness"));
}

#[test]
fn assoc_center_commutators_dictionary() {
    assert!(stdout(&["assoc", "T3"]).contains("is associative"));
    assert!(stdout(&["assoc", "conjS3"]).contains("not associative"));
    assert_eq!(json(&["center", "R3", "--alpha", "1/2"])["latin_unit"]["inverse_verified"], true);
    let v = json(&["commutators", "--ev", "2", "--eu", "3", "--depth", "5"]);
    assert_eq!(v["matches"], true);
    assert!(v["first_identity"].is_null());
    let v = json(&["dictionary", "R4", "--target", "T2"]);
    assert_eq!(v["holds"], true);
    assert_eq!(v["fiber"], serde_json::json!([0, 2]));
}

#[test]
fn iso_and_list() {
    assert!(json(&["iso", "R3", "alexZ3t2"])["isomorphic"] == true);
    assert!(json(&["iso", "R3", "T3"])["isomorphic"] == false);
    let list = json(&["list"]);
    assert!(list.as_array().unwrap().iter().any(|e| e["key"] == "rack2"));
}

#[test]
fn export_import_round_trip() {
    let dir = std::env::temp_dir().join(format!("qring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for key in ["R5", "flip4", "rack2", "conjS3", "tetra"] {
        let text = stdout(&["export", key]);
        let path = dir.join(format!("{key}.json"));
        std::fs::write(&path, &text).unwrap();
        let p = path.to_str().unwrap();
        assert_eq!(stdout(&["export", "--file", p]), text);
        assert_eq!(
            json(&["iso", key, "--file", p])["map"],
            serde_json::json!((0..json(&["info", key])["size"].as_u64().unwrap()).collect::<Vec<_>>())
        );
        assert_eq!(stdout(&["info", "--file", p]), stdout(&["info", key]));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["graded", "R6", "3"][..],
        &["units", "T2", "--ring", "Zmod:4"],
        &["power-assoc", "R4", "--symbolic"],
        &["--format", "json", "conjecture"],
    ] {
        assert_eq!(qring(args).stdout, qring(args).stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["info", "R4"]), 0);
    assert_eq!(code(&["info", "nope"]), 2);
    assert_eq!(code(&["info"]), 2);
    assert_eq!(code(&["info", "--file", "/nonexistent/q.json"]), 2);
    assert_eq!(code(&["graded", "R3", "--ring", "Zmod:1"]), 2);
    assert_eq!(code(&["units", "R3", "--element", "1,0,0,1"]), 1);
    assert_eq!(code(&["center", "R4", "--alpha", "1"]), 1);
    assert_eq!(code(&["dictionary", "R4", "--target", "R3"]), 1);
    assert_eq!(code(&["graded", "R3", "40"]), 3);
    assert_eq!(code(&["units", "T3", "--box", "40"]), 3);
    assert_eq!(code(&["--max-k", "99", "graded", "R3"]), 3);
    assert_eq!(code(&["bogus-subcommand"]), 2);
}

#[test]
fn malformed_file_is_an_input_error() {
    let path = std::env::temp_dir().join(format!("qring-bad-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"name":"bad","size":2,"table":[[0,5],[1,1]]}"#).unwrap();
    assert_eq!(code(&["info", "--file", path.to_str().unwrap()]), 2);
    std::fs::remove_file(&path).unwrap();
}
