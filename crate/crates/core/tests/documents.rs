use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

use shtuka_core::doc::{self, DocError, Format, Options, Report};

fn example(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn run(text: &str) -> Report {
    doc::run(&doc::parse(text).unwrap(), &Options::default()).unwrap()
}

fn value(r: &Report, i: usize) -> &Value {
    r.results[i].value.as_ref().unwrap()
}

fn cli(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_shtuka"))
        .args(args)
        .env_remove("SHTUKA_SEED")
        .env_remove("SHTUKA_FORMAT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

#[test]
fn minimal_tower() {
    let r = run(&example("minimal.json"));
    assert_eq!(r.results.len(), 1);
    assert_eq!(value(&r, 0)["orders"], json!(["2", "4"]));
    assert!(!r.failed());
}

#[test]
fn epsilon_example_is_not_bounded() {
    let r = run(&example("epsilon.json"));
    let b = value(&r, 0);
    assert_eq!(b["bounded"], json!(false));
    assert_eq!(b["certificate"]["kind"], json!("not_divisible"));
    assert_eq!(b["certificate"]["residual"], json!([0, 1]));
    let d = value(&r, 3);
    assert_eq!(d["divisible"], json!(false));
    assert_eq!(d["witness"]["residual"], json!("eps"));
}

#[test]
fn alpha_p_over_f4_is_not_strict() {
    let r = run(&example("strictness.json"));
    let s = value(&r, 0);
    assert_eq!(s["strict"], json!(false));
    let w = s["witnesses"].as_array().unwrap().iter().find(|w| w["a"] == json!("w")).unwrap();
    assert_eq!(w["n_action"], json!("(1+w)"));
    assert_eq!(value(&r, 1)["strict"], json!(true));
    assert_eq!(value(&r, 2)["forced"], json!("Y^2"));
}

#[test]
fn deformation_example_lifts() {
    let r = run(&example("deformation.json"));
    assert!(!r.failed());
    let l = value(&r, 1);
    assert_eq!(l["reduction_ok"], json!(true));
    assert_eq!(l["hodge_ok"], json!(true));
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    for name in ["minimal.json", "epsilon.json", "strictness.json", "deformation.json", "suite.json"] {
        let text = example(name);
        let a = run(&text);
        let b = run(&text);
        let ja = doc::emit(&a, Format::Json);
        assert_eq!(ja, doc::emit(&b, Format::Json), "{name}");
        assert_eq!(doc::emit(&a, Format::Human), doc::emit(&b, Format::Human), "{name}");
        assert_eq!(Report::from_json(&ja).unwrap(), a, "{name}");
    }
}

#[test]
fn empty_report_is_header_only() {
    let r = run(r#"{"ring": {"preset": "fq", "q": 3}}"#);
    let human = doc::emit(&r, Format::Human);
    assert_eq!(human.lines().count(), 1);
    assert!(human.starts_with("# shtuka "));
}

#[test]
fn parse_errors() {
    let dangling = example("minimal.json").replace(r#""object": "sh""#, r#""object": "missing""#);
    match doc::parse(&dangling) {
        Err(DocError::UnresolvedReference { name, .. }) => assert_eq!(name, "missing"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(doc::parse("{\"ring\": "), Err(DocError::Syntax { .. })));
    let zeta = r#"{"ring": {"preset": "truncated", "q": 2, "n": 2, "var": "eps", "zeta": "1 + eps"}, "commands": [{"op": "validate-ring"}]}"#;
    let parsed = doc::parse(zeta).unwrap();
    assert!(matches!(doc::run(&parsed, &Options::default()), Err(DocError::Validation { .. })));
}

#[test]
fn cli_exit_codes() {
    let minimal = example("minimal.json");
    let ok = cli(&["-", "--format", "json"], Some(&minimal));
    assert_eq!(ok.status.code(), Some(0));
    let rep = Report::from_json(&String::from_utf8(ok.stdout).unwrap()).unwrap();
    assert_eq!(rep.results[0].value.as_ref().unwrap()["orders"], json!(["2", "4"]));

    let dangling = minimal.replace(r#""object": "sh""#, r#""object": "missing""#);
    let bad = cli(&["-"], Some(&dangling));
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("missing"));

    let failing = r#"{"ring": {"preset": "truncated", "q": 2, "n": 2, "var": "eps", "zeta": "eps"}, "objects": {"u": {"kind": "local", "matrix": [["z - eps"]]}}, "commands": [{"op": "zd-verschiebung", "object": "u", "d": 1}, {"op": "divide", "series": "z", "d": 1}]}"#;
    let out = cli(&["-"], Some(failing));
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[0] zd-verschiebung u: FAILED"), "{text}");
    assert!(text.contains("[1] divide: ok"), "{text}");
}

#[test]
fn cli_seed_flag_and_env_agree() {
    let text = example("minimal.json");
    let a = cli(&["-", "--seed", "7", "--format", "json"], Some(&text));
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_shtuka"));
    cmd.args(["-", "--format", "json"]).env("SHTUKA_SEED", "7").stdin(Stdio::piped()).stdout(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let b = child.wait_with_output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let rep = Report::from_json(&String::from_utf8(a.stdout).unwrap()).unwrap();
    assert_eq!(rep.header.options.seed, 7);
}
