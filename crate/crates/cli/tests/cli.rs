use std::path::PathBuf;
use std::process::{Command, Output};

use layercraft_cli::input::InputSpec;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_layercraft")).args(args).env_remove("LAYERCRAFT_BUDGET").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn nums(v: &Value) -> Vec<i64> {
    v.as_array().expect("array").iter().map(|x| x.as_i64().expect("integer")).collect()
}

#[test]
fn b2_root_ideal_prediction_matches() {
    let r = json(&run(&["analyze", &fixture("b2_full.json")]));
    assert_eq!(r["schema_version"], 1);
    assert_eq!(nums(&r["char_poly"]), vec![4, -4, 1]);
    assert_eq!(nums(&r["prediction"]["predicted"]), vec![2, 2]);
    assert_eq!(nums(&r["prediction"]["computed"]), vec![2, 2]);
    assert_eq!(r["prediction"]["matches"], true);
    assert_eq!(r["flags"]["supersolvable"], "true");
    assert_eq!(r["flags"]["strictly_supersolvable"], "false");
    assert!(r.get("timing_ms").is_none());
}

#[test]
fn report_is_deterministic_and_echo_revalidates() {
    let a = run(&["analyze", &fixture("matrix_s_torus.json")]);
    let b = run(&["analyze", &fixture("matrix_s_torus.json")]);
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    let echo = serde_json::to_string(&r["input"]).unwrap();
    let original = InputSpec::from_path(fixture("matrix_s_torus.json").as_ref()).unwrap();
    assert_eq!(InputSpec::from_json(&echo).unwrap(), original);
    let timed = json(&run(&["analyze", &fixture("matrix_s_torus.json"), "--timing"]));
    assert!(timed["timing_ms"].is_u64());
}

#[test]
fn matrix_s_inductive_in_both_modes() {
    for mode in ["exhaustive", "guided"] {
        let r = json(&run(&["analyze", &fixture("matrix_s_torus.json"), "--mode", mode]));
        assert_eq!(r["poset"]["elements"], 18);
        assert_eq!(r["flags"]["inductive"], "true");
        let table = &r["certificates"]["induction_table"];
        assert_eq!(nums(&table["exponents"]), vec![2, 2, 2]);
        assert_eq!(table["rows"].as_array().unwrap().len(), 6);
    }
}

#[test]
fn pi3w_factorable_not_divisional() {
    let r = json(&run(&["analyze", &fixture("pi3w.json")]));
    assert_eq!(r["flags"]["factorable"], "true");
    assert_eq!(nums(&r["exponents"]), vec![3, 3]);
    assert_eq!(r["flags"]["divisional"], "false");
    let text = run(&["analyze", "--fixture", "pi3w", "--format", "text"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("divisional: false"));
    assert!(text.contains("exponents: {3,3}"));
}

#[test]
fn guided_root_ideals() {
    let r = json(&run(&["analyze", &fixture("c5_ideal.json"), "--mode", "guided"]));
    assert_eq!(r["prediction"]["matches"], true);
    assert_eq!(nums(&r["prediction"]["predicted"]), vec![2, 4, 4, 6, 6]);
    assert_eq!(r["flags"]["strictly_supersolvable"], "true");
    let r = json(&run(&["analyze", &fixture("b5_extension.json"), "--mode", "guided"]));
    assert_eq!(nums(&r["prediction"]["computed"]), vec![2, 4, 6, 6, 7]);
    assert_eq!(r["prediction"]["matches"], true);
}

fn dot_counts(out: &Output) -> (usize, usize) {
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.starts_with("digraph") && s.contains("rankdir=BT"));
    (s.lines().filter(|l| l.contains("[label=")).count(), s.lines().filter(|l| l.contains("->")).count())
}

#[test]
fn hasse_diagrams() {
    assert_eq!(dot_counts(&run(&["hasse", &fixture("trivial.json")])), (1, 0));
    assert_eq!(dot_counts(&run(&["hasse", "--fixture", "b2-torus"])), (7, 10));
    assert_eq!(dot_counts(&run(&["hasse", &fixture("pi3w.json")])).0, 10);
    let dot = String::from_utf8(run(&["hasse", "--fixture", "b2-torus"]).stdout).unwrap();
    for label in ["(1,1)", "(-1,-1)", "t1t2^-1=1"] {
        assert!(dot.contains(&format!("\"{label}\"")), "{label}");
    }
}

#[test]
fn hasse_to_file() {
    let path = std::env::temp_dir().join(format!("layercraft-hasse-{}.dot", std::process::id()));
    let out = run(&["hasse", "--fixture", "d2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert_eq!(dot.matches("->").count(), 6);
    let _ = std::fs::remove_file(path);
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "deletion-restriction", "--count", "30", "--seed", "3", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "--suite", "inclusions", "--count", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("fixture d2: supersolvable but not inductive"));
    let out = run(&["verify", "--suite", "predicted", "--format", "json"]);
    let reports = json(&out);
    assert_eq!(reports[0]["suite"], "predicted");
    assert!(reports[0]["failures"].as_array().unwrap().is_empty());
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(1));
}

#[test]
fn search_tiny_run_logs_nothing() {
    let path = std::env::temp_dir().join(format!("layercraft-search-{}.json", std::process::id()));
    let out = run(&["search", "--max-atoms", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let log: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(log["candidates"].as_array().unwrap().is_empty());
    let verdict = |name: &str| log["fixtures"].as_array().unwrap().iter().find(|f| f["fixture"] == name).unwrap()["verdict"].clone();
    assert_eq!(verdict("pi3w"), "not-divisional");
    assert_eq!(verdict("matrix-s-real"), "lattice");
    let _ = std::fs::remove_file(path);
}

#[test]
fn exit_codes() {
    let bad = run(&["analyze", &fixture("unknown_key.json")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("colour"));
    assert_eq!(run(&["analyze", "/nonexistent/input.json"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "--fixture", "nope"]).status.code(), Some(1));
    let capped = Command::new(env!("CARGO_BIN_EXE_layercraft"))
        .args(["analyze", &fixture("matrix_s_torus.json")])
        .env("LAYERCRAFT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(capped.stdout.is_empty());
    assert_eq!(run(&["analyze", "--fixture", "pi3w", "--budget", "5"]).status.code(), Some(2));
}

#[test]
fn error_kinds_map_to_exit_codes() {
    use layercraft_cli::CliError;
    assert_eq!(CliError::Input(String::new()).exit_code(), 1);
    assert_eq!(CliError::Budget(String::new()).exit_code(), 2);
    assert_eq!(CliError::Inconsistency(String::new()).exit_code(), 3);
}
