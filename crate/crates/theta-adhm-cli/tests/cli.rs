use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta-adhm")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn count_suite_passes_with_json() {
    let o = run(&["verify", "count", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "count");
    assert_eq!(v["checks"].as_array().unwrap().len(), 11);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    assert_eq!(v["configEcho"]["maxDegree"], "8");
    assert!(v["engineVersion"].is_string());
}

#[test]
fn json_is_deterministic_apart_from_timing() {
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        for c in v["checks"].as_array_mut().unwrap() {
            c["elapsedMs"] = 0.into();
        }
        v.to_string()
    };
    let a = run(&["verify", "basic", "--json"]);
    let b = run(&["verify", "basic", "--json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn failing_suite_exits_one() {
    // the printed twistor table carries misprints, so this suite fails
    let o = run(&["verify", "twistor"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL J-table x3"));
}

#[test]
fn exhausted_budget_exits_three() {
    let o = run(&["verify", "monad", "--k", "2", "--term-cap", "10"]);
    assert_eq!(code(&o), 3, "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["verify", "nope"])), 2);
    assert_eq!(code(&run(&["verify", "monad", "--mode", "weird"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let o = run(&["reduce", "--algebra", "C4", "--expr", "z1 + q"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown generator q at 5"));
    assert_eq!(code(&run(&["reduce", "--algebra", "T9", "--expr", "z1"])), 2);
    assert_eq!(code(&run(&["reduce", "--algebra", "C4", "--expr", "(z1"])), 2);
}

#[test]
fn reduce_prints_normal_forms() {
    let o = run(&["reduce", "--algebra", "C4", "--expr", "z3 z1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "mu z1 z3");
    let o = run(&["reduce", "--algebra", "S7", "--expr", "z4' z4"]);
    assert_eq!(stdout(&o).trim(), "1 - z1 z1' - z2 z2' - z3 z3'");
    let o = run(&["reduce", "--algebra", "S4", "--expr", "alpha beta - lambda beta alpha", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["isZero"], true);
    let o = run(&["reduce", "--algebra", "Sp2", "--expr", "a1' a1 + a2' a2 + c1' c1 + c2' c2"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = run(&["reduce", "--algebra", "C4", "--expr", "d(z1 z2)"]);
    assert_eq!(stdout(&o).trim(), "z1 d(z2) + z2 d(z1)");
}

#[test]
fn theta_zero_reduce() {
    let o = run(&["reduce", "--algebra", "S4", "--theta-zero", "--expr", "alpha beta - beta alpha"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn out_file_receives_the_report() {
    let dir = std::env::temp_dir().join(format!("theta-adhm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("count.json");
    let o = run(&["verify", "count", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"suite\": \"count\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn qgroup_sp_runs_only_the_quotient_checks() {
    let o = run(&["verify", "qgroup", "--sp"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("modulo Sp(2)"));
    assert!(!stdout(&o).contains("coassociativity"));
}
