use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxnewton"))
        .args(args)
        .env_remove("NEWTON_QBG_BUDGET")
        .output()
        .expect("spawn maxnewton")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = bin(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn newton_point_in_eps_coordinates() {
    let out = stdout_ok(&[
        "newton",
        "point",
        "--type",
        "A",
        "--rank",
        "2",
        "--lambda-eps",
        "-2,0,2",
        "--w",
        "1",
    ]);
    assert_eq!(out.trim(), "2,-1,-1");
    let out = stdout_ok(&["newton", "point", "--type", "A2", "--lambda", "-2,-2", "--w", "1"]);
    assert_eq!(out.trim(), "2,1");
}

#[test]
fn newton_max_identity_is_lambda() {
    let out = stdout_ok(&["newton", "max", "--type", "A2", "--pairings", "9", "--v", "12"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["nu_x"], serde_json::json!(["9", "9"]));
    assert_eq!(v["k"], 0);
    assert!(v.get("oracle").is_none());
}

#[test]
fn newton_max_oracle_agrees() {
    let out = bin(&[
        "newton",
        "max",
        "--type",
        "A2",
        "--pairings",
        "9",
        "--v",
        "1",
        "--w",
        "1",
        "--oracle",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("AGREE"));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["nu_x"], v["oracle"]["nu"]);
    assert!(v["oracle"]["interval_size"].as_u64().unwrap() > 1);
}

#[test]
fn sweep_a2_pairings_nine() {
    let out = stdout_ok(&["newton", "sweep", "--type", "A", "--rank", "2", "--pairings", "9"]);
    assert_eq!(out.lines().last().unwrap(), "36/36 AGREE");
}

#[test]
fn sweep_sampling_is_seeded() {
    let args = [
        "newton",
        "sweep",
        "--type",
        "A2",
        "--pairings",
        "9",
        "--sample",
        "5",
        "--seed",
        "3",
    ];
    let a = stdout_ok(&args);
    assert_eq!(a, stdout_ok(&args));
    assert_eq!(a.lines().last().unwrap(), "5/5 AGREE");
}

#[test]
fn qbg_path_and_export() {
    let out = stdout_ok(&["qbg", "path", "--type", "A", "--rank", "2", "--from", "12", "--to", "2"]);
    assert!(out.contains("length 3\n"));
    assert!(out.contains("weight 1,1\n"));
    let out = stdout_ok(&["qbg", "path", "--type", "A", "--rank", "2", "--from", "", "--to", ""]);
    assert!(out.starts_with("length 0\n"));

    let dot = stdout_ok(&["qbg", "export", "--type", "A", "--rank", "2"]);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 15);
    let json = stdout_ok(&["qbg", "export", "--type", "A", "--rank", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
}

#[test]
fn qbg_all_paths_budget() {
    let out = stdout_ok(&["qbg", "all-paths", "--type", "A2", "--from", "12", "--to", "2"]);
    assert!(out.starts_with("count 4\n"));
    let out = bin(&[
        "qbg",
        "all-paths",
        "--type",
        "A2",
        "--from",
        "12",
        "--to",
        "2",
        "--path-budget",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn misc_commands() {
    assert_eq!(stdout_ok(&["mk", "--type", "A", "--rank", "2", "--k", "2"]).trim(), "8");
    assert_eq!(stdout_ok(&["polygon", "--points", "0,0;1,2;2,1"]).trim(), "2,-1");
    let svg = stdout_ok(&["polygon", "--slopes", "2,-1", "--format", "svg"]);
    assert!(svg.contains("<svg"));
    assert_eq!(stdout_ok(&["cocovers", "--type", "A2", "--lambda", "0,0"]), "");

    let out = stdout_ok(&["cocovers", "--type", "A1", "--lambda", "3", "--w", "1"]);
    assert_eq!(out.lines().count(), 2);

    let out = stdout_ok(&["chains", "--type", "A2", "--pairings", "12", "--v", "12", "--w", "21"]);
    assert!(out.starts_with("count 4\n"));

    let pass = stdout_ok(&["mazur", "--type", "A1", "--lambda", "5", "--w", "1", "--nu-b", "4"]);
    assert!(pass.starts_with("PASS"));
    let fail = stdout_ok(&["mazur", "--type", "A1", "--lambda", "5", "--w", "1", "--nu-b", "5"]);
    assert!(fail.starts_with("FAIL"));
}

#[test]
fn roots_json() {
    let out = stdout_ok(&["roots", "--type", "G2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["c_G"], 3);
}

#[test]
fn group_budget_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_maxnewton"))
        .args(["qbg", "export", "--type", "A3"])
        .env("NEWTON_QBG_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn bad_input_is_reported() {
    let out = bin(&["newton", "point", "--type", "A2", "--pairings", "1,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let out = bin(&["newton", "point", "--type", "B2", "--lambda-eps", "1,0"]);
    assert_eq!(out.status.code(), Some(1));
}
