use std::process::{Command, Output};

use serde_json::Value;

use adjoint_atlas_core::catalog::{build_catalog, CatalogEntry, DEFAULT_CATALOG};
use adjoint_atlas_core::classify::{classify, ClassificationRecord};
use adjoint_atlas_core::varieties::{invariants, InvariantRecord, VarietySpec};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adjoint-atlas"))
        .args(args)
        .env_remove("ADJOINT_ATLAS_CATALOG")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), v)
}

fn cases(v: &Value) -> Vec<String> {
    v["result"]["possible_cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn classify_examples() {
    let (code, v) = json(&["classify", "--r", "3", "--d", "9", "--n", "9"]);
    assert_eq!(code, 0);
    assert!(cases(&v).contains(&"ii-b".to_string()));
    assert_eq!(v["schema_version"], 1);

    let (code, v) = json(&["classify", "--r", "2", "--d", "100", "--n", "5"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["out_of_scope"], true);
    assert_eq!(v["status"], "out_of_scope");

    let (code, v) = json(&["classify", "--r", "6", "--d", "4", "--n", "7"]);
    assert_eq!(code, 0);
    assert_eq!(cases(&v), vec!["i"]);
    assert_eq!(v["result"]["harris"]["value"], "0");
}

#[test]
fn classify_payload_round_trips() {
    let (_, v) = json(&["classify", "--r", "5", "--d", "10", "--n", "11"]);
    let rec: ClassificationRecord = serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(rec, classify(5, 10, 11).unwrap());
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["classify", "--r", "3"]).status.code(), Some(1));
    assert_eq!(
        run(&["classify", "--r", "x", "--d", "1", "--n", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["classify", "--r", "3", "--d", "2", "--n", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["catalog", "--r-max", "12"]).status.code(), Some(1));
    assert_eq!(run(&["catalog", "--verify", "--r-max", "3"]).status.code(), Some(1));
    assert_eq!(
        run(&["bound", "harris", "--d", "5", "--r", "2", "--s", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn invariants_examples() {
    let (code, v) = json(&[
        "invariants",
        "--spec",
        r#"{"kind":"p1_bundle_hypersurface","e":[1,1,1,1],"b":-1}"#,
    ]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(
        (
            r["r"].as_i64(),
            r["d"].as_i64(),
            r["n"].as_i64(),
            r["g"].as_i64(),
            r["delta"].as_i64()
        ),
        (Some(3), Some(7), Some(7), Some(2), Some(2))
    );

    let (_, v) = json(&["invariants", "--spec", r#"{"kind":"scroll_p1","e":[1,1]}"#]);
    let r = &v["result"];
    assert_eq!(
        (r["r"].as_i64(), r["d"].as_i64(), r["g"].as_i64(), r["delta"].as_i64()),
        (Some(2), Some(2), Some(0), Some(0))
    );

    let (_, v) = json(&[
        "invariants",
        "--spec",
        r#"{"kind":"scroll_p2","preset":"tangent_plus_1"}"#,
    ]);
    let r = &v["result"];
    assert_eq!(
        (
            r["r"].as_i64(),
            r["d"].as_i64(),
            r["n"].as_i64(),
            r["g"].as_i64(),
            r["delta"].as_i64()
        ),
        (Some(4), Some(10), Some(10), Some(3), Some(3))
    );
}

#[test]
fn invariants_from_file_round_trips() {
    let dir = env!("CARGO_TARGET_TMPDIR");
    let path = format!("{dir}/segre-spec.json");
    let spec = r#"{"kind":"segre_product","factors":[{"dim":2,"deg":1,"h0":3},{"dim":3,"deg":1,"h0":4}]}"#;
    std::fs::write(&path, spec).unwrap();
    let (code, v) = json(&["invariants", "--spec", &format!("@{path}")]);
    assert_eq!(code, 0);
    let rec: InvariantRecord = serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(rec, invariants(&VarietySpec::from_json(spec).unwrap()).unwrap());
}

#[test]
fn invariants_errors_name_the_field() {
    let out = run(&["invariants", "--spec", r#"{"kind":"klein_bottle"}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("klein_bottle"));

    let out = run(&["invariants", "--spec", r#"{"kind":"scroll_p1","e":[0,1]}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("very ample"));

    let out = run(&[
        "invariants",
        "--spec",
        r#"{"kind":"p1_bundle_hypersurface","e":[1,1],"b":0}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`e`"));
}

#[test]
fn enumerate_has_no_iv_d_below_four() {
    let (code, v) = json(&["enumerate", "--r-max", "3"]);
    assert_eq!(code, 0);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["case"] != "iv-d"));
    let (_, v) = json(&["enumerate", "--r-max", "4"]);
    assert!(v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["case"] == "iv-d"));
}

#[test]
fn bound_subcommands() {
    let (code, v) = json(&["bound", "harris", "--d", "5", "--r", "2", "--s", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["value"], "4");
    let (_, v) = json(&["bound", "lemma2", "--r", "4", "--s", "3", "--d", "7", "--g", "3"]);
    assert_eq!(v["result"]["hypotheses_hold"], true);
    assert_eq!(v["result"]["degree"]["holds"], true);
    let (_, v) = json(&["bound", "clifford", "--d", "10", "--g", "4", "--special"]);
    assert_eq!(v["result"]["h0_bound"], 6);
    let (_, v) = json(&["bound", "barth", "--r", "6", "--s", "3"]);
    assert_eq!(v["result"]["picard_rank_one"]["holds"], true);
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        vec!["--format", "json", "catalog", "--verify", "--r-max", "6"],
        vec!["--format", "json", "classify", "--r", "4", "--d", "10", "--n", "10"],
        vec!["--format", "table", "enumerate", "--r-max", "5"],
    ] {
        let a = run(&args).stdout;
        let b = run(&args).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b);
    }
}

#[test]
fn json_keys_are_sorted() {
    let out = String::from_utf8(
        run(&[
            "--format", "json", "bound", "harris", "--d", "9", "--r", "3", "--s", "2",
        ])
        .stdout,
    )
    .unwrap();
    let keys: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
}

#[test]
fn table_format_is_derived_from_payload() {
    let out =
        String::from_utf8(run(&["--format", "table", "classify", "--r", "3", "--d", "9", "--n", "9"]).stdout).unwrap();
    assert!(out.contains("result.possible_cases"));
    assert!(out.contains("i,ii-b"));
    assert!(out.lines().any(|l| l.starts_with("status") && l.ends_with("ok")));
}

#[test]
fn catalog_list_jsonl_feeds_back_into_verify() {
    let out = run(&["catalog", "--list", "--r-max", "5", "--jsonl"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let entries: Vec<CatalogEntry> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(entries, build_catalog(5).unwrap());

    let path = format!("{}/listed.jsonl", env!("CARGO_TARGET_TMPDIR"));
    std::fs::write(&path, &text).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_adjoint-atlas"))
        .args(["catalog", "--verify", "--r-max", "5", "--jsonl"])
        .env("ADJOINT_ATLAS_CATALOG", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), entries.len());
    assert!(lines
        .iter()
        .all(|l| l["pass"] == true && l["spec"].is_object() && l["expected"].is_object()));
}

#[test]
fn faulty_catalog_exits_three_with_diffs() {
    let path = format!("{}/faulty.jsonl", env!("CARGO_TARGET_TMPDIR"));
    std::fs::write(
        &path,
        DEFAULT_CATALOG.replace(r#""d":"2r+2","n":"2r+2""#, r#""d":"2r+3","n":"2r+2""#),
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_adjoint-atlas"))
        .args(["--format", "json", "catalog", "--verify", "--r-max", "4"])
        .env("ADJOINT_ATLAS_CATALOG", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "verification_failed");
    let bad: Vec<&Value> = v["result"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["pass"] == false)
        .collect();
    assert_eq!(bad.len(), 2);
    for e in bad {
        assert_eq!(e["case"], "iv-e");
        assert_eq!(e["diffs"][0]["field"], "d");
    }
}
