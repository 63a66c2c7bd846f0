//! End-to-end tests of the `qlens` binary: exit codes, JSON schema,
//! text/JSON parity and determinism.

use std::process::{Command, Output};

fn qlens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlens"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(out)).expect("valid JSON on stdout")
}

#[test]
fn ktheory_n3_r12_torsion() {
    let out = qlens(&["ktheory", "--n", "3", "--r", "12", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["alphas"], serde_json::json!(["2", "6", "144"]));
    assert_eq!(v["k1"], "Z");
    assert_eq!(v["k0"], "Z ⊕ Z_2 ⊕ Z_6 ⊕ Z_144");
    assert_eq!(v["torsion_generated"], true);
    for g in v["generators"].as_array().unwrap() {
        assert_eq!(g["verified"], true);
    }
}

#[test]
fn ktheory_sphere_case() {
    let out = qlens(&["ktheory", "--n", "1", "--r", "1", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["k0"], "Z");
    assert_eq!(v["k1"], "Z");
}

#[test]
fn ktheory_trivial_factors_dropped_in_display() {
    let out = qlens(&["ktheory", "--n", "2", "--r", "2", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["alphas"], serde_json::json!(["1", "4"]));
    assert_eq!(v["k0"], "Z ⊕ Z_4");
}

#[test]
fn table_json_schema_and_rows() {
    let out = qlens(&["table", "--n", "4", "--r", "1..48", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["n"], 4);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 48);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row["r"], (i + 1) as u64);
        assert_eq!(row["k1"], "Z");
        assert_eq!(row["alphas"].as_array().unwrap().len(), 4);
    }
    // r = 16: invariant factors (4, 8, 16, 128)
    assert_eq!(rows[15]["alphas"], serde_json::json!(["4", "8", "16", "128"]));
}

#[test]
fn table_single_row() {
    let out = qlens(&["table", "--n", "1", "--r", "2..2", "--format", "json"]);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["k0"], "Z ⊕ Z_2");
    let out = qlens(&["table", "--n", "3", "--r", "6..6", "--format", "json"]);
    assert_eq!(json(&out)["rows"][0]["k0"], "Z ⊕ Z_3 ⊕ Z_72");
}

#[test]
fn json_output_is_deterministic() {
    let a = stdout_str(&qlens(&["table", "--n", "3", "--r", "1..20", "--format", "json"]));
    let b = stdout_str(&qlens(&["table", "--n", "3", "--r", "1..20", "--format", "json"]));
    assert_eq!(a, b);
}

#[test]
fn text_and_json_report_identical_content() {
    let text = stdout_str(&qlens(&["table", "--n", "2", "--r", "2..12"]));
    let v = json(&qlens(&["table", "--n", "2", "--r", "2..12", "--format", "json"]));
    for row in v["rows"].as_array().unwrap() {
        let r = row["r"].as_u64().unwrap();
        let alphas: Vec<String> = row["alphas"]
            .as_array()
            .unwrap()
            .iter()
            .map(|a| a.as_str().unwrap().to_string())
            .collect();
        let line = text
            .lines()
            .find(|l| l.trim_start().starts_with(&format!("{r} ")))
            .unwrap_or_else(|| panic!("row {r} present in text output"));
        assert!(
            line.contains(&alphas.join(", ")),
            "text row {r} carries the same invariant factors: {line}"
        );
        assert!(line.contains(row["k0"].as_str().unwrap()));
    }
}

#[test]
fn matrix_command_prints_euler_matrix() {
    let out = qlens(&["matrix", "--n", "3", "--r", "4", "--snf", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m[1][0], "4");
    assert_eq!(m[2][0], "-6");
    assert_eq!(m[3][0], "4");
    assert_eq!(m[0][3], "0");
    assert_eq!(v["snf"]["alphas"], serde_json::json!(["2", "2", "16"]));
}

#[test]
fn verify_algebra_passes_and_exits_zero() {
    let out = qlens(&[
        "verify-algebra",
        "--n",
        "1",
        "--max-N",
        "3",
        "--r",
        "2",
        "--samples",
        "25",
        "--seed",
        "11",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["all_pass"], true);
    assert!(v["checks"].as_array().unwrap().len() > 10);
}

#[test]
fn verify_algebra_budget_exhaustion_exits_three() {
    let out = qlens(&[
        "verify-algebra",
        "--n",
        "2",
        "--max-N",
        "2",
        "--rewrite-budget",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("budget"), "stderr names the budget: {err}");
    assert!(err.contains("isometry"), "stderr names the failing check: {err}");
}

#[test]
fn verify_generators_ranges() {
    let out = qlens(&["verify-generators", "--n", "3", "--r", "1..30", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 30);
    // no tabulated generators beyond n = 3
    let out = qlens(&["verify-generators", "--n", "4", "--r", "2..2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pairings_grids() {
    let out = qlens(&["pairings", "--n", "2", "--max-N", "2", "--format", "json"]);
    let v = json(&out);
    assert_eq!(
        v["projection_pairings"],
        serde_json::json!([["1", "1", "1"], ["0", "1", "2"], ["0", "0", "1"]])
    );
    assert_eq!(
        v["u_pairings"],
        serde_json::json!([["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "1"]])
    );
    // <mu_1, [L_3]> = -3
    let chern = v["line_bundle_chern"].as_array().unwrap();
    let entry = chern.iter().find(|e| e[0] == 2).unwrap();
    assert_eq!(entry[1], "-2");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qlens(&["ktheory", "--n", "0", "--r", "3"]).status.code(), Some(2));
    assert_eq!(qlens(&["ktheory", "--n", "2"]).status.code(), Some(2));
    assert_eq!(qlens(&["table", "--n", "2", "--r", "9..3"]).status.code(), Some(2));
    assert_eq!(qlens(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("qlens-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let out = qlens(&[
        "table",
        "--n",
        "1",
        "--r",
        "1..5",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout_str(&out).is_empty());
    let contents = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&contents).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    std::fs::remove_file(&path).unwrap();
}
