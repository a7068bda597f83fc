use std::process::{Command, Output};

use serde_json::Value;

fn toral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toral"))
        .args(args)
        .env_remove("TORAL_DEFAULT_Q")
        .env_remove("TORAL_PERTURB_WITNESS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(args: &[&str]) -> (Value, String) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = toral(&all);
    let text = stdout(&o);
    (serde_json::from_str(&text).expect("valid JSON"), text)
}

#[test]
fn decide_mixing_cat_map() {
    let o = toral(&["decide-mixing", "[[2,1],[1,1]]"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Mixing"));
    let (v, _) = json_of(&["decide-mixing", "[[2,1],[1,1]]"]);
    assert_eq!(v["verdict"]["answer"], "Mixing");
    assert_eq!(v["oracle"]["agrees"], true);
}

#[test]
fn negative_verdict_carries_checked_witness() {
    let (v, _) = json_of(&["decide-mixing", "[[n,n-1],[1,1]]"]);
    assert_eq!(v["verdict"]["answer"], "NotMixing");
    assert_eq!(v["verdict"]["witness"].as_array().unwrap().len(), 2);
    assert_eq!(v["oracle"]["agrees"], true);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(toral(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(toral(&["decide-mixing"]).status.code(), Some(2));
    assert_eq!(toral(&["witness-triple", "[[2,1],[1,1]]"]).status.code(), Some(2));
}

#[test]
fn module_errors_exit_2_with_name() {
    let o = toral(&["decide-mixing", "[[2,1],[1,2]]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NonUnimodular"));
    let o = toral(&["krengel", "--f", "1 + (1,0)", "--T", "[[2,1],[1,1]]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ZeroFrequencyPresent"));
    let o = toral(&["classify", "[[1,2],[3]]"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("ParseError"));
}

#[test]
fn disagreement_exits_1() {
    let o = Command::new(env!("CARGO_BIN_EXE_toral"))
        .args(["decide-mixing", "[[1,1],[0,1]]"])
        .env("TORAL_PERTURB_WITNESS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_round_trips_byte_identical() {
    let cases: &[&[&str]] = &[
        &["classify", "[[2,1],[1,1]]"],
        &["decide-joint", "[[n,n^2-1],[1,n]]", "[[2*n^2-1,2*n^3-2*n],[2*n,2*n^2-1]]"],
        &["decide-relative", "[[1,1],[0,1]]^n", "[[1,0],[1,1]]^(n^2)"],
        &["witness-triple", "--conjugates", "[[2,1],[1,1]]", "[[1,1],[1,2]]"],
        &["estimate", "--set", "0 1/2 0 1/2 @ 2", "--set", "0 1/2 0 1/2 @ 2", "--m", "[[2,1],[1,1]]", "--Q", "64"],
        &["scan-conjecture", "--T", "[[2,1],[1,1]]", "--S", "[[1,1],[1,2]]", "--rect", "0 1/2 0 1/2 @ 2", "--Q", "128", "--n", "1..3"],
        &["krengel", "--f", "(1,0)+(0,1)", "--T", "[[2,1],[1,1]]"],
        &["scenarios", "--filter", "joint"],
    ];
    for args in cases {
        let (v, text) = json_of(args);
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn json_keys_sorted() {
    let (_, text) = json_of(&["classify", "[[2,1],[1,1]]"]);
    let keys: Vec<&str> = text
        .lines()
        .filter_map(|l| l.strip_prefix("  \""))
        .map(|l| l.split('"').next().unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn scenarios_joint_filter() {
    let (v, _) = json_of(&["scenarios", "--filter", "joint"]);
    let names: Vec<&str> = v["scenarios"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        ["joint-conjugate-triple", "joint-quadratic-square", "joint-cubic-square", "joint-bounded-eigenvalue"]
    );
    assert!(v["scenarios"].as_array().unwrap().iter().all(|s| s["passed"] == true));
}

#[test]
fn all_scenarios_pass() {
    let o = toral(&["scenarios"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failed"));
}

#[test]
fn scan_csv_is_versioned() {
    let dir = std::env::temp_dir().join(format!("toral-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let o = toral(&[
        "scan-conjecture", "--T", "[[1,0],[1,1]]", "--S", "[[2,1],[1,1]]",
        "--rect", "0 1/2 0 1/2 @ 2", "--Q", "256", "--n", "2..4",
        "--csv", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# toral-scan v1"));
    assert_eq!(lines.next(), Some("n,estimate,error_bound"));
    assert_eq!(lines.count(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_rejected_where_not_tabular() {
    let o = toral(&["classify", "[[2,1],[1,1]]", "--csv", "/dev/null"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn default_lattice_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_toral"))
        .args(["estimate", "--set", "0 1/2 0 1/2 @ 2", "--json"])
        .env("TORAL_DEFAULT_Q", "96")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lattice"], 96);
    let (v, _) = json_of(&["estimate", "--set", "0 1/2 0 1/2 @ 2"]);
    assert_eq!(v["lattice"], 1024);
}

#[test]
fn trig_arguments_may_start_with_minus() {
    let o = toral(&["correlate", "--f", "(1,0)", "--f", "-(-2,-1)", "--m", "[[2,1],[1,1]]"]);
    assert_eq!(o.status.code(), Some(0));
    // ᵗT(1,0) = (2,1) cancels (-2,-1), so the product integrates to −1
    assert_eq!(stdout(&o).trim(), "-1");
}

#[test]
fn find_unipotent_commutator() {
    let (v, _) = json_of(&["find-unipotent", "[[2,1],[1,1]]", "[[1,1],[1,2]]", "--max-len", "4"]);
    assert_eq!(v["word"], "g0 g1 g0^-1 g1^-1");
    let (v, _) = json_of(&["find-unipotent", "[[2,1],[1,1]]", "[[1,1],[1,2]]", "--max-len", "3"]);
    assert_eq!(v["found"], false);
}
