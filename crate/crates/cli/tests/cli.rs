use std::io::Write;
use std::process::{Command, Stdio};

fn uctadp() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uctadp"))
}

#[test]
fn train_zero_games_writes_a_loadable_model() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.txt");
    let st = uctadp().args(["train", "--games", "0", "--out"]).arg(&out).status().unwrap();
    assert!(st.success());
    let text = std::fs::read_to_string(&out).unwrap();
    uctadp_core::adp::load_model(&text).unwrap();
}

#[test]
fn bad_usage_exits_2() {
    let out = uctadp().arg("fly").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    let out = uctadp().args(["selfplay", "--white", "deep-blue", "--black", "adp"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_model_exits_1() {
    let out = uctadp()
        .args(["selfplay", "--white", "adp", "--black", "adp", "--games", "1", "--model", "/no/such/model.txt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("model"));
}

#[test]
fn selfplay_prints_games_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fast.cfg");
    std::fs::write(&cfg, "iterations = 30\n").unwrap();
    let out = uctadp()
        .args(["selfplay", "--white", "uct-adp-pb", "--black", "uct-sim", "--games", "2", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "{text}");
    assert!(lines[0].starts_with("game 1 black=uct-sim white=uct-adp-pb winner="));
    assert!(lines[2].starts_with("summary "));
}

#[test]
fn bad_config_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "colour = red\n").unwrap();
    let out = uctadp().args(["bench", "--seconds", "0.01", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn protocol_over_pipes() {
    let mut child = uctadp()
        .arg("protocol")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"START 15\nINFO timeout_turn 500\nBEGIN\nEND\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "OK\n7,7\n");
}

#[test]
fn failure_rate_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = uctadp()
        .args(["failure-rate", "--agents", "uct-adp", "--trials", "2", "--checkpoints", "10,20", "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("double-three-uct-adp.csv")).unwrap();
    assert!(csv.starts_with("iterations,failure_rate\n10,"));
}
