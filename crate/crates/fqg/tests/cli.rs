//! End-to-end tests of the `fqg` binary: report shapes, exit codes,
//! determinism, and the Peter-Weyl cache.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqg")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let output = run(args);
    let value =
        serde_json::from_slice(&output.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {:?}", output));
    (value, output.status.code().expect("exit code"))
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fqg-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn analyze_group_z2_blocks_and_haar() {
    let (report, code) = run_json(&["analyze-group", &fixture("z2_function.json")]);
    assert_eq!(code, 0);
    let profile: Vec<u64> =
        report["blocks"].as_array().unwrap().iter().map(|b| b["N"].as_u64().unwrap()).collect();
    assert_eq!(profile, vec![1, 1]);
    let haar = report["haar"]["values"].as_array().unwrap();
    assert!((haar[0][0].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((haar[1][0].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(report["kac"], true);
}

#[test]
fn analyze_group_s3_profile() {
    let (report, code) = run_json(&["analyze-group", &fixture("s3_function.json")]);
    assert_eq!(code, 0);
    let profile: Vec<u64> =
        report["blocks"].as_array().unwrap().iter().map(|b| b["N"].as_u64().unwrap()).collect();
    assert_eq!(profile, vec![1, 1, 2]);
}

#[test]
fn analyze_action_fixtures() {
    let (report, code) = run_json(&["analyze-action", &fixture("translation_s3.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["core_dim"], 6);
    assert_eq!(report["kernel_dim"], 0);
    assert_eq!(report["decomposition"]["holds"], true);

    let (report, code) = run_json(&["analyze-action", &fixture("grading_m2.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["core_dim"], 4);
    assert_eq!(report["kernel_dim"], 0);
}

#[test]
fn reduce_all_modes_on_inflate_fixture() {
    for (mode, dim_key) in [("minimal", "rb_dim"), ("reduced", "br_dim"), ("universal", "bu_dim")] {
        let (report, code) =
            run_json(&["reduce", &fixture("inflate_c2.json"), "--mode", mode]);
        assert_eq!(code, 0, "mode {mode}: {report}");
        assert_eq!(report["result"][dim_key], 1, "mode {mode}");
        assert_eq!(report["pass"], true, "mode {mode}");
    }
}

#[test]
fn verify_quantum_group_fixture() {
    let (report, code) = run_json(&["verify", &fixture("kac_paljutkin.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["pass"], true);
    assert_eq!(report["kac"], true);
}

#[test]
fn deterministic_given_seed_and_tol() {
    let args = ["analyze-group", &fixture("kac_paljutkin.json"), "--seed", "7", "--tol", "1e-10"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    // reports carry seed and tolerances
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["options"]["seed"], 7);
    assert!((report["options"]["tolerances"]["eq_tol"].as_f64().unwrap() - 1e-10).abs() < 1e-25);
}

#[test]
fn cache_round_trip_via_flag() {
    let dir = temp_dir("flag");
    let path = fixture("s3_function.json");
    let cache = dir.to_str().unwrap();

    let (first, code) = run_json(&["analyze-group", &path, "--cache", cache]);
    assert_eq!(code, 0);
    assert_eq!(first["cache"]["hit"], false);

    let (second, code) = run_json(&["analyze-group", &path, "--cache", cache]);
    assert_eq!(code, 0);
    assert_eq!(second["cache"]["hit"], true);
    assert_eq!(first["blocks"], second["blocks"]);

    // corrupting the entry forces a silent recompute
    let entry = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.extension().is_some_and(|e| e == "json"))
        .expect("cache file written");
    std::fs::write(&entry, "{}").unwrap();
    let (third, code) = run_json(&["analyze-group", &path, "--cache", cache]);
    assert_eq!(code, 0);
    assert_eq!(third["cache"]["hit"], false);
    assert_eq!(first["blocks"], third["blocks"]);

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn cache_dir_from_environment() {
    let dir = temp_dir("env");
    let path = fixture("z2_function.json");
    let output = Command::new(env!("CARGO_BIN_EXE_fqg"))
        .args(["analyze-group", &path])
        .env("FQG_CACHE_DIR", &dir)
        .output()
        .unwrap();
    let report: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["cache"]["enabled"], true);
    let entries = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(entries, 1, "one cache entry written");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn schema_error_exit_codes_and_pointers() {
    let dir = temp_dir("schema");
    // Latin-square violation at /cayley
    let bad = dir.join("bad_cayley.json");
    std::fs::write(
        &bad,
        r#"{"kind":"finite_group","order":2,"cayley":[[0,0],[1,1]],"model":"function_algebra"}"#,
    )
    .unwrap();
    let (err, code) = run_json(&["analyze-group", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(err["error"]["pointer"], "/cayley");

    // delta of the wrong shape at /delta
    let bad_delta = dir.join("bad_delta.json");
    std::fs::write(
        &bad_delta,
        r#"{"kind":"coaction",
            "group":{"kind":"finite_group","order":1,"cayley":[[0]],"model":"function_algebra"},
            "algebra":{"kind":"star_algebra","dim":1,"mult":[[[[1.0,0.0]]]],
                        "unit":[[1.0,0.0]],"star_matrix":[[[1.0,0.0]]]},
            "delta":[[[1.0,0.0]],[[0.0,0.0]]]}"#,
    )
    .unwrap();
    let (err, code) = run_json(&["analyze-action", bad_delta.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(err["error"]["pointer"], "/delta");

    // missing file: exit 3
    let output = run(&["verify", dir.join("nope.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(3));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn wrong_document_kind_is_an_input_error() {
    let (err, code) = run_json(&["analyze-action", &fixture("z2_function.json")]);
    assert_eq!(code, 2);
    assert!(err["error"]["message"].as_str().unwrap().contains("coaction"));
}

#[test]
fn pretty_flag_changes_rendering_only() {
    let path = fixture("z2_function.json");
    let compact = run(&["analyze-group", &path]);
    let pretty = run(&["analyze-group", &path, "--pretty"]);
    let a: Value = serde_json::from_slice(&compact.stdout).unwrap();
    let b: Value = serde_json::from_slice(&pretty.stdout).unwrap();
    assert_eq!(a, b);
    assert!(pretty.stdout.len() > compact.stdout.len());
    let _ = Path::new(&path);
}
