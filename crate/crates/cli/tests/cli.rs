use std::process::{Command, Output};

fn dualring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualring"))
        .args(args)
        .env_remove("DUALRING_MONOMIAL_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn sl_imag_sp_three_json() {
    let o = dualring(&["family", "sl-imag-sp", "--n", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    let class = doc["fundamental_class"].as_array().unwrap();
    assert_eq!(class.len(), 1);
    assert_eq!(class[0][0], "e5^1*e9^1");
    assert_eq!(doc["nonvanishing"]["verdict"], true);
    assert_eq!(doc["ghost"]["is_ghost_by_levi_argument"], true);
    assert!(doc.get("timing_ms").is_none());
}

#[test]
fn siegel_witness_is_sigma_two() {
    let o = dualring(&["family", "siegel", "--g", "2", "--parts", "1,1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    assert_eq!(doc["nonvanishing"]["verdict"], true);
    assert_eq!(doc["nonvanishing"]["witness"][0][0], "sigma2^1");
}

#[test]
fn single_part_siegel_is_usage_error() {
    let o = dualring(&["family", "siegel", "--g", "2", "--parts", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("parts"));
}

#[test]
fn unknown_family_and_bad_flags_are_usage_errors() {
    assert_eq!(dualring(&["family", "nope", "--n", "2"]).status.code(), Some(2));
    assert_eq!(dualring(&["family", "sl-imag-sp"]).status.code(), Some(2));
    assert_eq!(dualring(&["family", "sl-imag-sp", "--n", "x"]).status.code(), Some(2));
    assert_eq!(dualring(&["family", "unitary", "--p", "2", "--q", "3", "--parts", "1-2"]).status.code(), Some(2));
    assert_eq!(dualring(&["check", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_three() {
    let o = dualring(&["family", "sl-imag-sp", "--n", "4", "--cap", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let env = Command::new(env!("CARGO_BIN_EXE_dualring"))
        .args(["family", "sl-imag-sp", "--n", "4"])
        .env("DUALRING_MONOMIAL_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
}

#[test]
fn flag_beats_environment_beats_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dualring.toml");
    std::fs::write(&path, "monomial_cap = 1\nformat = \"json\"\n").unwrap();
    let path = path.to_str().unwrap();

    let from_file = dualring(&["--config", path, "family", "sl-imag-sp", "--n", "4"]);
    assert_eq!(from_file.status.code(), Some(3));

    let from_flag = dualring(&["--config", path, "--cap", "1000", "family", "sl-imag-sp", "--n", "4"]);
    assert_eq!(from_flag.status.code(), Some(0));
    assert_eq!(json(&from_flag)["nonvanishing"]["verdict"], true);

    let from_env = Command::new(env!("CARGO_BIN_EXE_dualring"))
        .args(["--config", path, "family", "sl-imag-sp", "--n", "4"])
        .env("DUALRING_MONOMIAL_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(from_env.status.code(), Some(0));

    std::fs::write(dir.path().join("bad.toml"), "cap = 3\n").unwrap();
    let bad = dualring(&["--config", dir.path().join("bad.toml").to_str().unwrap(), "ring", "lagrangian", "--g", "2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn sweep_json_is_byte_identical_across_runs() {
    let args = ["sweep", "siegel", "--g", "2..4", "--json", "--checks", "oracle,properties"];
    let a = dualring(&args);
    let b = dualring(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["summary"]["instances"], 4);
    assert_eq!(doc["summary"]["nonvanishing_true"], 4);
}

#[test]
fn timing_only_when_requested() {
    let o = dualring(&["family", "sp-in-ugg", "--g", "2", "--json", "--timing"]);
    assert!(json(&o)["timing_ms"].is_u64());
}

#[test]
fn unitary_sweep_reports_every_instance() {
    let o = dualring(&["sweep", "unitary", "--p", "1", "--q", "2..4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    assert_eq!(doc["summary"]["nonvanishing_false"], 0);
    let labels: Vec<&str> = doc["entries"].as_array().unwrap().iter().map(|e| e["label"].as_str().unwrap()).collect();
    for q in 2..=4 {
        assert!(labels.contains(&format!("unitary-product p=1 q={q} parts=1:{}", q - 1).as_str()));
    }
}

#[test]
fn empty_sweep_has_empty_summary() {
    let o = dualring(&["sweep", "sl-odd-real", "--n", "3..2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["summary"]["instances"], 0);
}

#[test]
fn sweep_records_per_instance_errors() {
    let o = dualring(&["sweep", "sl-imag-sp", "--n", "1..4", "--cap", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    assert_eq!(doc["summary"]["instances"], 4);
    assert!(doc["summary"]["errors"].as_u64().unwrap() >= 1);
    assert_eq!(doc["entries"][3]["error"]["exit_code"], 3);
}

#[test]
fn ring_poincare_dump() {
    let o = dualring(&["ring", "lagrangian", "--g", "3", "--poincare"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 + t^2 + t^4 + 2*t^6 + t^8 + t^10 + t^12"));
    let both = dualring(&["ring", "sp-in-ugg", "--g", "2", "--json"]);
    let rings = json(&both);
    assert_eq!(rings.as_array().unwrap().len(), 2);
    assert_eq!(rings[0]["total_dimension"], 6);
    assert_eq!(rings[1]["total_dimension"], 4);
}

#[test]
fn oracle_suite_passes() {
    let o = dualring(&["check", "--suite", "oracle", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let results = json(&o);
    let results = results.as_array().unwrap();
    assert!(results.iter().any(|r| r["name"] == "lagrangian-poincare g=6"));
    assert!(results.iter().all(|r| r["passed"] == true));
}
