use std::process::{Command, Output};

use graph_semiring::fractional::fractional_chromatic;
use graph_semiring::hom::{chi, SearchConfig};
use graph_semiring::eval_str;
use serde_json::Value;

fn gsr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsr")).args(args).output().expect("run gsr")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = gsr(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn eval_summary() {
    let o = gsr(&["eval", "kg(6,2)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("n=15\nm=45\n"), "{text}");
    let v = json(&["eval", "frac(c5,2)"]);
    assert_eq!(v["n"], 5);
    assert_eq!(v["m"], 0);
}

#[test]
fn invariants_match_the_library() {
    let cfg = SearchConfig::default();
    for expr in ["c5", "kg(6,2)", "join(c5,c5)", "blow(c5,2)", "petersen"] {
        let g = eval_str(expr).unwrap();
        let out = stdout(&gsr(&["invariant", "chi", expr]));
        assert_eq!(out.trim(), chi(&g, &cfg).unwrap().to_string(), "{expr}");
        let out = stdout(&gsr(&["invariant", "chif", expr]));
        assert_eq!(out.trim(), fractional_chromatic(&g).unwrap().to_string(), "{expr}");
    }
    let v = json(&["invariant", "chif", "c5"]);
    assert_eq!((v["value"]["num"].as_str(), v["value"]["den"].as_str()), (Some("5"), Some("2")));
    assert_eq!(stdout(&gsr(&["invariant", "minrank:2", "c5"])).trim(), "3");
    assert_eq!(stdout(&gsr(&["invariant", "fnum:complete", "c5", "--n-max", "2"])).trim(), "> 2");
}

#[test]
fn theta_text_format() {
    let out = stdout(&gsr(&["invariant", "theta-bar", "kg(6,2)"]));
    assert!(out.starts_with("3.000000 ± "), "{out}");
}

#[test]
fn shannon_and_rate() {
    let v = json(&["shannon", "c5"]);
    let (lo, hi) = (v["lower"]["value"].as_f64().unwrap(), v["upper"]["value"].as_f64().unwrap());
    assert!(lo <= hi && hi - lo <= 1e-3 && (lo - 5f64.sqrt()).abs() <= 1e-3);
    assert_eq!(stdout(&gsr(&["shannon", "k4"])).lines().next(), Some("[4.000000, 4.000000]"));
    let v = json(&["rate", "c5", "k2"]);
    let hi = v["upper"]["value"].as_f64().unwrap();
    assert!((hi - 5f64.sqrt().log2()).abs() <= 1e-3);
    assert!(v["lower"]["value"].as_f64().unwrap() <= hi);
}

#[test]
fn check_suites() {
    let o = gsr(&["check", "semiring-family:complete", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("PASS ")));
    assert!(!text.lines().any(|l| l.starts_with("FAIL ")));
    assert!(text.lines().last().unwrap().contains("0 failed"));
    let o = gsr(&["check", "linear-like:haemers:2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = gsr(&["check", "adjunction", "--trials", "20"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| gsr(args).status.code();
    assert_eq!(code(&["eval", "join(c5"]), Some(2));
    assert_eq!(code(&["eval", "nope(3)"]), Some(2));
    assert_eq!(code(&["invariant", "bogus", "c5"]), Some(2));
    assert_eq!(code(&["eval", "pow(kg(8,3),3)"]), Some(3));
    assert_eq!(code(&["--budget", "10", "invariant", "chi", "kg(8,3)"]), Some(4));
    assert_eq!(code(&["rate", "e3", "k2"]), Some(5));
    assert_eq!(code(&["check", "no-such-suite"]), Some(2));
}

#[test]
fn deterministic_output_is_byte_identical() {
    for args in [
        &["--json", "--witness", "invariant", "chi", "kg(6,2)"][..],
        &["--json", "shannon", "c5"][..],
        &["--deterministic", "check", "adjunction", "--trials", "10"][..],
    ] {
        let a = gsr(args);
        let b = gsr(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
