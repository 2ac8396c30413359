use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magiclab"))
        .args(args)
        .env_remove("MAGICLAB_BUDGET_SECONDS")
        .output()
        .expect("run magiclab")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap_or(-1)
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "magiclab {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json")
}

#[test]
fn index_goldens() {
    let v = json(&["index", "K(5,6,7)"]);
    assert_eq!(v["theta"], 0);
    assert_eq!(v["order"], 18);
    let v = json(&["index", "K(3,8,9)"]);
    assert_eq!((v["theta"].as_u64(), v["case"].as_str()), (Some(7), Some("tripartite-II")));
    let v = json(&["index", "K(3,3)"]);
    assert_eq!(v["case"], "bipartite-parity");
    let v = json(&["index", "U(2,K(3,3))"]);
    assert_eq!(v["theta"], 1);
}

#[test]
fn label_output_is_verified() {
    let v = json(&["label", "K(3,8,9)"]);
    assert_eq!(v["eta"], 27);
    assert_eq!(v["constant"], 154);
    assert_eq!(v["is_magic"], true);
    assert_eq!(v["labels"].as_object().unwrap().len(), 20);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["index", "K(3,"]), 2);
    assert_eq!(code(&["index", "C(4)"]), 3);
    assert_eq!(code(&["label", "K(2,2,9)"]), 4);
    assert_eq!(code(&["qmr", "5", "2"]), 5);
    assert_eq!(code(&["kotzig", "3", "4"]), 5);
    assert_eq!(code(&["index", "FILE(/nonexistent/graph.adj)"]), 1);
}

#[test]
fn no_construction_still_prints_index() {
    let out = run(&["label", "K(2,2,9)"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["lower"].as_u64().is_some());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("magiclab: "));
}

#[test]
fn oracle_flag_resolves_small_cycles() {
    let v = json(&["--oracle", "index", "C(4)"]);
    assert_eq!(v["theta"], 0);
}

#[test]
fn file_spec_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("k33.adj");
    let mut f = std::fs::File::create(&graph).unwrap();
    writeln!(f, "# K(3,3)").unwrap();
    for u in 0..6 {
        let side: Vec<String> = (0..6).filter(|v| (v < &3) != (u < 3)).map(|v| v.to_string()).collect();
        writeln!(f, "{u}: {}", side.join(" ")).unwrap();
    }
    drop(f);
    let spec = format!("FILE({})", graph.display());
    let v = json(&["--oracle", "index", &spec]);
    assert_eq!(v["theta"], 1);

    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"{"labels":{"0":1,"1":5,"2":6,"3":2,"4":3,"5":7}}"#).unwrap();
    let v = json(&["verify", &spec, good.to_str().unwrap()]);
    assert_eq!(v["is_magic"], true);
    assert_eq!(v["constant"], 12);
    assert_eq!(v["eta"], 7);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"labels":{"0":1,"1":2,"2":3,"3":4,"4":5,"5":6}}"#).unwrap();
    let v = json(&["verify", &spec, bad.to_str().unwrap()]);
    assert_eq!(v["is_magic"], false);
    let v = json(&["label", &spec, "--verify-only", bad.to_str().unwrap()]);
    assert_eq!(v["is_magic"], false);
}

#[test]
fn arrays_print_csv_and_json() {
    let out = run(&["qmr", "3", "10"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("# d=16 rho=160 sigma=48\n"));
    assert_eq!(csv.lines().count(), 4);
    let v = json(&["--format", "json", "kotzig", "3", "5"]);
    assert_eq!(v["rows"], 3);
    assert_eq!(v["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn tables_formats() {
    let text = String::from_utf8(run(&["tables"]).stdout).unwrap();
    assert!(text.contains("not yet solved"));
    let v = json(&["--format", "json", "tables"]);
    assert_eq!(v.as_array().unwrap().len(), 4);
    let csv = String::from_utf8(run(&["--format", "csv", "tables"]).stdout).unwrap();
    assert!(csv.starts_with("table,row,column,cell\n"));
}

#[test]
fn seed_does_not_change_results() {
    let a = json(&["--seed", "1", "oracle", "K(2,3,4)"]);
    let b = json(&["--seed", "99", "oracle", "K(2,3,4)"]);
    assert_eq!(a["theta"], b["theta"]);
}
