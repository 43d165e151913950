use std::process::{Command, Output};

fn bncells(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bncells")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = bncells(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).expect("valid json")
}

#[test]
fn kl_rank_one() {
    let s = stdout(&["kl", "--rank", "1"]);
    assert!(s.contains("C[-1]\n+ (V^-1) T[1]\n+ (1) T[-1]\n"), "{s}");
}

#[test]
fn kl_rank_two_matches_golden() {
    assert_eq!(stdout(&["kl", "--rank", "2", "--format", "tsv"]), include_str!("golden/kl_rank2.tsv"));
}

#[test]
fn kl_json_is_deterministic() {
    let args = ["kl", "--rank", "2", "--format", "json", "--jobs", "1"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&["kl", "--rank", "2", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["regime"], "asymptotic");
    assert!(v["config"].get("jobs").is_none());
}

#[test]
fn cell_counts_rank_two() {
    let lr = json(&["cells", "--rank", "2", "--format", "json"]);
    assert_eq!(lr["count"], 5);
    assert_eq!(lr["hasse"].as_array().unwrap().len(), 4);
    assert_eq!(lr["classes"][1], serde_json::json!(["[-1,2]", "[-2,1]", "[2,-1]", "[1,-2]"]));
    let members = &lr["details"][1]["members"];
    assert_eq!(lr["details"][1]["shape"], "(1|1)");
    assert!(members.as_array().unwrap().iter().all(|m| m["q"]["plus"].is_array()));
    assert_eq!(json(&["cells", "--rank", "2", "--relation", "l", "--format", "json"])["count"], 6);
    assert_eq!(json(&["cells", "--rank", "2", "--relation", "r", "--format", "json"])["count"], 6);
}

#[test]
fn specialized_cells_follow_the_regime() {
    let v = json(&["cells", "--rank", "2", "--a", "1", "--b", "1", "--format", "json"]);
    assert_eq!(v["config"]["regime"], "specialized");
    assert_eq!(v["count"], 3);
}

#[test]
fn rs_single_element() {
    let s = stdout(&["rs", "--element", "[-1,2]"]);
    assert!(s.contains("shape (1|1)"), "{s}");
    assert_eq!(stdout(&["rs", "--rank", "2", "--format", "tsv"]).lines().count(), 9);
}

#[test]
fn conjectures_hold_at_rank_two() {
    let v = json(&["conjectures", "--rank", "2", "--format", "json"]);
    assert_eq!(v["holds"], true);
    let ids: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["statement-id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"P1") && ids.contains(&"P15"), "{ids:?}");
}

#[test]
fn epsilon_output_is_labelled_experimental() {
    let s = stdout(&["conjectures", "--rank", "2", "--epsilon"]);
    assert!(s.contains("experimental"));
}

#[test]
fn specialization_regimes() {
    let kept = json(&["specialize", "--rank", "2", "--a", "1", "--b", "2", "--format", "json"]);
    assert_eq!(kept["preserved"], true);
    assert_eq!(kept["n"], 2);
    let lost = stdout(&["specialize", "--rank", "2", "--a", "1", "--b", "1"]);
    assert!(lost.contains("[1,-2]") && lost.contains("s1 t s1"), "{lost}");
    assert!(lost.contains("fails: true"));
}

#[test]
fn report_holds_at_rank_two() {
    let v = json(&["report", "--rank", "2", "--format", "json"]);
    assert_eq!(v["holds"], true);
}

#[test]
fn out_file() {
    let path = std::env::temp_dir().join(format!("bncells-{}.tsv", std::process::id()));
    stdout(&["alpha", "--rank", "2", "--format", "tsv", "--out", path.to_str().unwrap()]);
    let s = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(s.starts_with("element\ta\tdelta"));
    assert_eq!(s.lines().count(), 9);
}

#[test]
fn usage_errors_exit_two() {
    let out = bncells(&["kl", "--rank", "9"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("185794560 elements") && err.contains("--force"), "{err}");
    assert_eq!(bncells(&["kl", "--rank", "0"]).status.code(), Some(2));
    assert_eq!(bncells(&["rs", "--element", "[1,1]"]).status.code(), Some(2));
    assert_eq!(bncells(&["specialize", "--rank", "2", "--a", "0", "--b", "1"]).status.code(), Some(2));
    assert_eq!(bncells(&["cells", "--rank", "2", "--relation", "x"]).status.code(), Some(2));
}
