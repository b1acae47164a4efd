use std::path::PathBuf;
use std::process::{Command, Output};

fn dodeca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dodeca")).args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn scratch_dir(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("dodeca-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn presentations() {
    let o = dodeca(&["presentations"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert!(v.to_string().contains("ws"));
}

#[test]
fn enumerate_then_analyze() {
    let dir = scratch_dir("enum");
    let o = dodeca(&["enumerate", "--space", "ws", "--max-index", "5", "--out", dir.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["per_degree"]["5"], 38);
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 39);

    let five = files.iter().find(|p| p.to_string_lossy().contains("-d005-")).unwrap();
    let h = dodeca(&["homology", five.to_str().unwrap()]);
    assert!(h.status.success());
    assert!(stdout_json(&h)["homology"].is_string());

    let a = dodeca(&["analyze", five.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(stdout_json(&a)["record"]["degree"], 5);

    let c = dodeca(&["cubulate", "--npc", five.to_str().unwrap()]);
    assert!(c.status.success());
    assert_eq!(stdout_json(&c)["npc"], true);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_appendix_passes() {
    let o = dodeca(&["verify-appendix"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn table4_as_csv() {
    let o = dodeca(&["--format", "csv", "reproduce", "table4"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("degree,"));
    assert_eq!(text.lines().count(), 13);
}

#[test]
fn table3_needs_slow() {
    let o = dodeca(&["reproduce", "table3"]);
    assert!(!o.status.success());
}

#[test]
fn bad_input_exit_code() {
    let dir = scratch_dir("bad");
    let f = dir.join("bad.json");
    std::fs::write(&f, "{\"space\": \"ws\", \"perms\": [[0, 0]]}").unwrap();
    let o = dodeca(&["analyze", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = dodeca(&["analyze", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}
