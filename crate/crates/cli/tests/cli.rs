use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_qmod");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn qmod")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn cert_path() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data/l5_gram.json")
        .display()
        .to_string()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn posn0() {
    let o = run(&["posn0", "--poly", "(N-1)*(N-2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "yes");
    let o = run(&["posn0", "--poly", "(N-1)*(N-3)"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "no: f(2) = -1");
}

#[test]
fn hermite() {
    let o = run(&["hermite", "--minpoly", "x^2+1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "r=0, s=2, inducible: no");
    let o = run(&["hermite", "--minpoly", "x^2-2", "--q", "x^2"]);
    let out = stdout(&o);
    assert!(out.starts_with("r=2, s=2, inducible: yes"), "{out}");
    assert!(out.contains("in induced ordering: yes"), "{out}");
}

#[test]
fn verify_gram_exit_codes() {
    let o = run(&["verify-gram", &cert_path()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("verified"));

    let src = std::fs::read_to_string(cert_path()).unwrap();
    let perturbed = temp_file(&src.replace("+ 7/5", "+ 1"));
    let o = run(&["verify-gram", perturbed.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("discrepancy"));

    let asym = temp_file(&src.replace("[\"121/100\", \"29/50\"]", "[\"120/100\", \"29/50\"]"));
    assert_eq!(run(&["verify-gram", asym.path().to_str().unwrap()]).status.code(), Some(2));

    let junk = temp_file("{\"algebra\": \"weyl-xy\"");
    assert_eq!(run(&["verify-gram", junk.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["verify-gram", "/nonexistent/cert.json"]).status.code(), Some(2));
}

#[test]
fn forbid_decimals() {
    assert_eq!(run(&["posn0", "--poly", "N + 1.5"]).status.code(), Some(0));
    assert_eq!(run(&["--forbid-decimals", "posn0", "--poly", "N + 1.5"]).status.code(), Some(2));
}

#[test]
fn json_mode() {
    let o = run(&["--json", "verify-gram", &cert_path()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 2);

    let o = run(&["--json", "posn0", "--poly", "N - 1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["member"], false);
    assert_eq!(v["at"], 0);

    let o = run(&["--json", "act", "--qm", "posn0", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["error"].is_string());
}

#[test]
fn fock_table() {
    let o = run(&["fock", "--element", "(N-1)*(N-2)", "--max-level", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = run(&["fock", "--element", "N - 1", "--max-level", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("0  no"));
}

#[test]
fn act_and_member() {
    assert_eq!(stdout(&run(&["act", "--k", "2", "--qm", "lambda=3"])), "2(N_3) = N_1");
    assert_eq!(stdout(&run(&["act", "--k", "-1", "--qm", "inf"])), "-1(N_inf) = N_inf");
    assert!(stdout(&run(&["act", "--k", "4", "--qm", "lambda=3"])).ends_with("undefined"));
    assert_eq!(run(&["member", "--qm", "lambda=2", "--poly", "N - 2"]).status.code(), Some(0));
    assert_eq!(run(&["member", "--qm", "lambda=1", "--poly", "N - 2"]).status.code(), Some(1));
}

#[test]
fn matpsd() {
    let m = temp_file(r#"{"vars": ["x"], "matrix": [["1", "x"], ["x", "1"]]}"#);
    let p = m.path().to_str().unwrap();
    let o = run(&["matpsd", "--file", p, "--constraints", "1 - x^2", "--box", "-1:1", "--grid", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["matpsd", "--file", p, "--constraints", "x", "--box", "0:4", "--grid", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("refuted at (2)"));
}

#[test]
fn ce_check() {
    let o = run(&["ce-check", "--projection", "parity-chain", "--samples", "20", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("CE5: FAIL"), "{}", stdout(&o));
    let o = run(&["ce-check", "--projection", "ntrace:2", "--samples", "5", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(run(&["ce-check", "--projection", "nope"]).status.code(), Some(2));
}

#[test]
fn deterministic_for_fixed_seed() {
    let args = ["--json", "ce-check", "--projection", "tr-ak", "--samples", "5", "--seed", "11"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn reproduce_paper() {
    let o = run(&["reproduce-paper"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.ends_with("13/13 passed"), "{out}");
    let o = run(&["--json", "reproduce-paper"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 13);
}
