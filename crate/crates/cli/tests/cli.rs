use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weyl-bianchi"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env("WEYL_BIANCHI_THREADS", "2").output().unwrap()
}

#[test]
fn evolve_prints_json() {
    let out = run(&["evolve", "--method", "rw"]);
    // The default background is not μ = ν = 1/2.
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("rw.toml");
    std::fs::write(&cfg, "[background]\nmu = 0.5\nnu = 0.5\n[window]\nt = 2.0\n").unwrap();
    let json = dir.path().join("out.json");
    let out = run(&["evolve", "--config", cfg.to_str().unwrap(), "--method", "rw", "--out", json.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["method"], "rw");
    assert_eq!(v["schema"], 1);
    assert!(v["diagnostics"]["unitarity_defect"].as_f64().unwrap() < 1e-14);
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    std::fs::write(&cfg, "[sweep]\nt = [0.5, 1.0]\nmethods = [\"ode\", \"closed\"]\n").unwrap();
    let out = run(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# schema=1\n"));
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert!(header.contains("err_abs_K11"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 3);
}

#[test]
fn config_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[background]\nmu = 1.0\nnu = \"half\"\n").unwrap();
    let out = run(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(run(&["evolve", "--method", "magnus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "--profile", "medium"]).status.code(), Some(2));
}

#[test]
fn specfun_eval() {
    let out = run(&["specfun", "eval", "gamma", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let parts: Vec<f64> = text.split_whitespace().map(|s| s.parse().unwrap()).collect();
    assert!((parts[0] - 1.0).abs() < 1e-14 && parts[1] == 0.0);
    let out = run(&["specfun", "eval", "whittaker", "0", "0.5", "3"]);
    let re: f64 = String::from_utf8(out.stdout).unwrap().split_whitespace().next().unwrap().parse().unwrap();
    assert!((re - (-1.5f64).exp()).abs() < 1e-14);
    assert_eq!(run(&["specfun", "eval", "gamma", "0"]).status.code(), Some(2));
    assert_eq!(run(&["specfun", "eval", "bessel", "1"]).status.code(), Some(2));
}

#[test]
fn validate_quick_profile() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let out = run(&["validate", "--profile", "quick", "--out", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["criteria"].as_array().unwrap().len(), 8);
    assert_eq!(v["passed"], true);
    assert!(v["config"].as_str().unwrap().contains("[validation]"));
}
