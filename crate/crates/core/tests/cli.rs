use std::process::Command;

use serde_json::Value;

fn drinfeld(args: &[&str]) -> (i32, String) {
    let (code, out, _) = drinfeld_full(args);
    (code, out)
}

fn drinfeld_full(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_drinfeld"))
        .args(args)
        .env_remove("DRINFELD_REPORTS_DIR")
        .output()
        .unwrap();
    let text = |b: Vec<u8>| String::from_utf8(b).unwrap();
    (out.status.code().unwrap(), text(out.stdout), text(out.stderr))
}

#[test]
fn check_reports_witness() {
    let (code, out) = drinfeld(&["check", "--p", "2", "--k", "2", "--rank", "2", "--g", "1;T+1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["version"], "drinfeld 0.1.0");
    assert_eq!(v["result"]["member"], true);
    assert_eq!(v["result"]["witnesses"][0], "T+1");
}

#[test]
fn invalid_input_exits_two() {
    let (code, out, err) = drinfeld_full(&["check", "--p", "4", "--k", "1", "--rank", "2", "--g", "1;T+1"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&err).unwrap();
    assert!(v["error"].as_str().unwrap().contains("not prime"));
}

#[test]
fn csv_density_table() {
    let (code, out) = drinfeld(&[
        "density", "--p", "2", "--k", "1", "--rank", "2", "--N", "3", "--mode", "exhaustive", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap();
    assert!(header.starts_with("q,r,N"), "{header}");
    assert_eq!(lines.count(), 3);
}

#[test]
fn report_file_reruns_identically() {
    let dir = std::env::temp_dir().join(format!("drinfeld-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("first.json");
    let args = ["aschbacher", "--q", "13", "--out", path.to_str().unwrap()];
    let (code, _) = drinfeld(&args);
    assert_eq!(code, 0);
    let first: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(first["result"]["allObstructed"], true);
    let (_, again) = drinfeld(&["aschbacher", "--q", "13"]);
    let second: Value = serde_json::from_str(&again).unwrap();
    assert_eq!(first["result"], second["result"]);
    std::fs::remove_dir_all(&dir).unwrap();
}
