use std::path::Path;
use std::process::{Command, Output};

fn bl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bl")).args(args).env_remove("BL_SEED").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &path]);
    let out = bl(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn random_generation_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen(dir.path(), "a.json", &["random", "--seed", "1", "-r", "3", "-b", "5"]);
    let b = gen(dir.path(), "b.json", &["random", "--seed", "1", "-r", "3", "-b", "5"]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 8);
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_bl"))
            .args(["gen", "random", "-r", "2", "-b", "4"])
            .env("BL_SEED", seed)
            .output()
            .unwrap()
    };
    assert_eq!(run("9").stdout, run("9").stdout);
    assert_eq!(stdout(&run("9")), stdout(&bl(&["gen", "random", "--seed", "9", "-r", "2", "-b", "4"])));
}

#[test]
fn separated_instance_has_r_balanced_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "s.json", &["separated", "-r", "4", "-b", "4"]);
    let csv = stdout(&bl(&["enumerate", &path]));
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#') && !l.starts_with("redId")).collect();
    assert_eq!(rows, ["0,7", "1,6", "2,5", "3,4"]);

    let json: serde_json::Value = serde_json::from_str(&stdout(&bl(&["enumerate", &path, "--format", "json"]))).unwrap();
    assert_eq!(json["count"], 4);
}

#[test]
fn trace_reports_one_step_each_way() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "s.json", &["separated", "-r", "4", "-b", "4"]);
    let out = bl(&["trace", &path, "-k", "0", "--start", "0,1", "--transitions", "0"]);
    assert!(out.status.success());
    let steps: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(steps.len(), 2);
    assert!(steps.iter().all(|s| s["balanced"] == true));
}

#[test]
fn verify_writes_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "s.json", &["separated", "-r", "5", "-b", "7"]);
    let cert = dir.path().join("cert.json");
    let out = bl(&["verify", &path, "--certificate", cert.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["balanced"], 5);
    assert!(report["halving_line"].is_object());
    let c: serde_json::Value = serde_json::from_slice(&std::fs::read(&cert).unwrap()).unwrap();
    assert_eq!(c["total"], 5);
    assert_eq!(c["lines"].as_array().unwrap().len(), 5);
}

#[test]
fn batch_verification_streams_one_report_per_instance() {
    let out = bl(&["verify", "--batch", "40", "--seed", "5", "--max-n", "16"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let reports: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 40);
    for r in &reports {
        assert_eq!(r["pass"], true);
        assert!(r["total"].as_u64().unwrap() <= r["balanced"].as_u64().unwrap());
        assert!(r["balanced"].as_u64().unwrap() >= r["r"].as_u64().unwrap());
    }
    let seq = bl(&["verify", "--batch", "40", "--seed", "5", "--max-n", "16", "--sequential"]);
    let strip = |o: &Output| -> Vec<serde_json::Value> {
        stdout(o)
            .lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("timings");
                v
            })
            .collect()
    };
    assert_eq!(strip(&out), strip(&seq));
}

#[test]
fn plots_are_deterministic_and_match_the_listing() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "s.json", &["separated", "-r", "4", "-b", "4"]);
    let points = stdout(&bl(&["plot", &path, "--what", "points"]));
    assert_eq!(points.matches(r#"class="point red""#).count(), 4);
    assert_eq!(points.matches(r#"class="point blue""#).count(), 4);
    let balanced = stdout(&bl(&["plot", &path, "--what", "balanced"]));
    assert_eq!(balanced.matches(r#"class="balanced""#).count(), 4);
    assert_eq!(balanced, stdout(&bl(&["plot", &path, "--what", "balanced"])));

    let svg = dir.path().join("c.svg");
    let clustered = gen(dir.path(), "c.json", &["clustered", "--seed", "3", "-r", "6", "-b", "10"]);
    assert!(bl(&["plot", &clustered, "--what", "certificate", "--out", svg.to_str().unwrap()]).status.success());
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(bl(&["gen", "random", "-r", "3", "-b", "4"]).status.code(), Some(2));
    let path = gen(dir.path(), "s.json", &["separated", "-r", "2", "-b", "2"]);
    assert_eq!(bl(&["plot", &path, "--what", "nonsense"]).status.code(), Some(2));
    assert_eq!(bl(&["trace", &path, "-k", "5"]).status.code(), Some(2));

    let bad = dir.path().join("collinear.json");
    std::fs::write(
        &bad,
        r#"{"points":[{"x":"0","y":"0","color":"R"},{"x":"1","y":"1","color":"B"},{"x":"2","y":"2","color":"B"},{"x":"3","y":"0","color":"R"}]}"#,
    )
    .unwrap();
    assert_eq!(bl(&["enumerate", bad.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(bl(&["enumerate", "/nonexistent/file.json"]).status.code(), Some(2));
}
