use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nlmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlmc"))
        .args(args)
        .env_remove("NLMC_MAX_VECTOR_N")
        .output()
        .expect("spawn nlmc")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = nlmc(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn scratch(name: &str, contents: &[u8]) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn gold_is_almost_bent() {
    let v = json(&["fn", "analyze", "gold:5:1"]);
    assert_eq!(v["vector_nl"], 12);
    assert_eq!(v["class"], "almost_bent");
    assert_eq!(v["degree"], 2);
}

#[test]
fn gv_length() {
    assert_eq!(json(&["bounds", "gv", "4", "3"])["length"], 7);
    let text = nlmc(&["bounds", "gv", "4", "3"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("length: 7"));
}

#[test]
fn bound_commands() {
    assert_eq!(json(&["bounds", "nl-mc", "4", "2"])["nl_upper"], 6);
    assert_eq!(json(&["bounds", "nl-mc", "4", "--nl", "6"])["M"], 2);
    let b = json(&["bounds", "mrrw-B", "0.4", "0.28409"])["B"].as_f64().unwrap();
    assert!((b - 0.2826).abs() < 5e-4);
    assert_eq!(json(&["bounds", "counting", "4", "1"])["vacuous"], true);
    let mrrw = json(&["bounds", "mrrw", "200", "200"]);
    assert!(mrrw["length"].as_u64().unwrap() > 704);
    assert_eq!(mrrw["label"], "asymptotic-bound extrapolation");
    let r = json(&["bounds", "rankprob", "8", "4", "--trials", "2000"]);
    assert_eq!(r["bound"], 2f64.powi(-8));
}

#[test]
fn bilinear_circuit_certifies() {
    let out = nlmc(&["synth", "bilinear", "8", "--distance", "4", "--seed", "7"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let header: Value = serde_json::from_str(text.lines().next().unwrap().trim_start_matches("# ")).unwrap();
    assert_eq!(header["seed"], 7);
    let file = scratch("bilinear8.circuit", text.as_bytes());
    let report = json(&["circuit", "certify", &file]);
    assert_eq!(report["theorem_holds"], true);
    assert_eq!(report["code_rank"], 8);
    assert!(json(&["circuit", "analyze", &file])["is_bilinear"].as_bool().unwrap());
}

#[test]
fn universal_round_trip() {
    let tt = "tt 3 2\n01101001\n00010111\n";
    let source = scratch("f32.tt", tt.as_bytes());
    let out = nlmc(&["synth", "universal", &source]);
    assert!(out.status.success());
    let circuit = scratch("f32.circuit", &out.stdout);
    let back = nlmc(&["circuit", "tt", &circuit]);
    assert_eq!(String::from_utf8(back.stdout).unwrap(), tt);
    assert_eq!(String::from_utf8(nlmc(&["circuit", "eval", &circuit, "7"]).stdout).unwrap(), "11\n");
}

#[test]
fn oracle_commands() {
    assert_eq!(json(&["oracle", "nl", "ip:2"])["nl"], 6);
    assert_eq!(json(&["oracle", "mc", "ip:2"])["mc"], 2);
    assert_eq!(json(&["oracle", "mc", "ip:2", "--kmax", "1"])["mc"], "> 1");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--format", "json", "synth", "bilinear", "6", "--distance", "3", "--seed", "3"];
    assert_eq!(nlmc(&args).stdout, nlmc(&args).stdout);
    let args = ["--format", "json", "bounds", "rankprob", "6", "3", "--trials", "5000", "--seed", "9"];
    assert_eq!(nlmc(&args).stdout, nlmc(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(nlmc(&["bounds", "counting", "4", "17"]).status.code(), Some(2));
    assert_eq!(nlmc(&["fn", "analyze", "gold:4:1"]).status.code(), Some(2));
    assert_eq!(nlmc(&["--max-vector-n", "3", "fn", "analyze", "ip:2"]).status.code(), Some(3));
    let bad = scratch("bad.circuit", b"circuit 2\ng1 = AND x1 g2\noutputs g1\n");
    let out = nlmc(&["circuit", "analyze", &bad]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(nlmc(&["circuit", "tt", "/nonexistent/file"]).status.code(), Some(4));
    let cascade = scratch("cascade.circuit", b"circuit 3\ng1 = AND x1 x2\ng2 = AND g1 x3\noutputs g2\n");
    assert_eq!(nlmc(&["circuit", "certify", &cascade]).status.code(), Some(2));
}

#[test]
fn budget_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_nlmc"))
        .args(["fn", "analyze", "ip:2"])
        .env("NLMC_MAX_VECTOR_N", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
