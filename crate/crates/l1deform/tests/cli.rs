use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run_in(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_l1deform")).arg("--cache-dir").arg(cache).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run_in(dir.path(), &["verify", "sec4.pairings"])), 0);
    assert_eq!(code(&run_in(dir.path(), &["verify", "sec4.gamma"])), 1);
    assert_eq!(code(&run_in(dir.path(), &["-N", "10", "verify", "thm3.1"])), 2);
    let unknown = run_in(dir.path(), &["verify", "nosuch"]);
    assert_eq!(code(&unknown), 2);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("thm3.1"));
    assert_eq!(code(&run_in(dir.path(), &["--bogus"])), 2);
    assert_eq!(code(&run_in(dir.path(), &["verify"])), 2);
}

#[test]
fn json_schema() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["--format", "json", "verify", "sec4.gamma"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["check", "items", "params", "status"]);
    assert_eq!(v["status"], "fail");
    for item in v["items"].as_array().unwrap() {
        let keys: Vec<&str> = item.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["computed", "expected", "name"]);
    }
    let bad: Vec<&Value> = v["items"].as_array().unwrap().iter().filter(|i| i["expected"] != i["computed"]).collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["expected"], "e1");
    assert_eq!(bad[0]["computed"], "-1/2 e1");

    let o = run_in(dir.path(), &["--format", "json", "verify", "sec4.pairings", "lemma5.1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn tsv_has_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&run_in(dir.path(), &["--format", "tsv", "verify", "sec4.pairings"]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("check\tstatus\tname\texpected\tcomputed\tmatch"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "-N", "20", "verify", "thm3.2", "lemma5.7", "families.distinguish"];
    let first = run_in(dir.path(), &args);
    let second = run_in(dir.path(), &args);
    let other = tempfile::tempdir().unwrap();
    let third = run_in(other.path(), &["--jobs", "1", "--format", "json", "-N", "20", "verify", "thm3.2", "lemma5.7", "families.distinguish"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, third.stdout);
}

#[test]
fn cache_dir_falls_back_to_env() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_l1deform"))
        .env("L1DEFORM_CACHE_DIR", dir.path())
        .args(["-N", "12", "cohomology", "--q", "2", "--weight", "3"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
}

#[test]
fn pair_and_integrate() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["--format", "tsv", "pair", "--cochain", "alpha1:3", "--cycle", "a2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\t-12\t"));
    let o = run_in(dir.path(), &["integrate", "--alpha1", "0,0,1", "--order", "2"]);
    assert_eq!(code(&o), 1);
    let o = run_in(dir.path(), &["integrate", "--alpha1", "1,0,0", "--order", "3"]);
    assert_eq!(code(&o), 0);
}
