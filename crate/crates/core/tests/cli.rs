use std::process::{Command, Output};

use serde_json::Value;

fn ksnyder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ksnyder")).args(args).output().expect("binary runs")
}

fn reports(out: &Output) -> Vec<Value> {
    serde_json::from_slice::<Value>(&out.stdout).expect("json on stdout").as_array().expect("array").clone()
}

fn value_of(report: &Value) -> Vec<f64> {
    report["value"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

const VERIFY: &[&str] = &["verify", "--dim", "4", "--a", "0.1,0,0,0", "--s", "0.01", "--realization", "maggiore", "--order", "4", "--seed", "1"];

#[test]
fn verify_example_passes_sorted_and_reproducible() {
    let first = ksnyder(VERIFY);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stdout));
    let list = reports(&first);
    assert!(list.len() > 10);
    let names: Vec<&str> = list.iter().map(|r| r["check"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for r in &list {
        assert!(r["pass"].as_bool().unwrap());
        assert!(r["max_residual"].is_number());
    }
    assert!(String::from_utf8_lossy(&first.stderr).contains("seed=1"));
    let second = ksnyder(VERIFY);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn numbers_carry_sixteen_significant_digits() {
    let out = ksnyder(&["compose", "--a", "0.1,0", "--s", "0.02", "--k", "0.3,0.2", "--q", "-0.1,0.4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.contains("max_residual")).unwrap();
    let mantissa = line.split(':').nth(1).unwrap().trim().trim_end_matches(',').split('e').next().unwrap();
    let digits = mantissa.chars().filter(|c| c.is_ascii_digit()).count();
    assert!(digits >= 15, "{line}");
}

#[test]
fn flat_composition_adds() {
    let out = ksnyder(&["compose", "--a", "0,0", "--s", "0", "--k", "1,0", "--q", "0,1", "--method", "exact", "--realization", "maggiore"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(value_of(&reports(&out)[0]), vec![1.0, 1.0]);
}

#[test]
fn snyder_antipode_is_negation() {
    let out = ksnyder(&["antipode", "--a", "0,0", "--s", "0.1", "--k", "0.3,0.4", "--realization", "maggiore"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &reports(&out)[0];
    let s = value_of(r);
    assert!((s[0] + 0.3).abs() <= 1e-12 && (s[1] + 0.4).abs() <= 1e-12);
    assert!(r["max_residual"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn methods_agree_on_composition() {
    let base = ["compose", "--a", "0.1,0,0", "--s", "0.05", "--k", "0.3,0.2,-0.4", "--q", "0.1,-0.5,0.2"];
    let exact = value_of(&reports(&ksnyder(&[&base[..], &["--method", "exact"]].concat()))[0]);
    let ode = value_of(&reports(&ksnyder(&[&base[..], &["--method", "ode"]].concat()))[0]);
    for (x, y) in exact.iter().zip(&ode) {
        assert!((x - y).abs() <= 1e-9);
    }
}

#[test]
fn other_subcommands_succeed() {
    for args in [
        vec!["kvec", "--a", "0.1,0.05", "--s", "0.02", "--k", "0.3,0.2"],
        vec!["kvec", "--inverse", "--a", "0.1,0.05", "--s", "0.02", "--k", "0.3,0.2"],
        vec!["ode", "--a", "0.1,0", "--s", "0.02", "--k", "0.3,0.2", "--q", "0.1,0.1", "--steps", "200"],
        vec!["star", "--a", "0.1,0", "--s", "0.02", "--k", "0.3,0.2", "--q", "0.1,0.1"],
        vec!["expand", "--a", "1,0", "--s", "0.5", "--k", "0.3,0.2", "--q", "0.1,0.1", "--u", "0.5"],
        vec!["antipode", "--a", "0.1,0", "--s", "0.02", "--k", "0.3,0.2", "--perturbative"],
    ] {
        let out = ksnyder(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!reports(&out).is_empty());
    }
}

#[test]
fn text_format_prints_one_line_per_check() {
    let out = ksnyder(&["compose", "--a", "0,0", "--s", "0", "--k", "1,0", "--q", "0,1", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("compose"));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("ksnyder-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = ksnyder(&["compose", "--a", "0,0", "--s", "0", "--k", "1,0", "--q", "0,1", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, out.stdout);
}

#[test]
fn failed_check_exits_one() {
    let out = ksnyder(&["compose", "--a", "0.1,0", "--s", "0.05", "--k", "0.3,0.2", "--q", "0.1,0.1", "--method", "ode", "--steps", "2", "--tol", "1e-15"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(!reports(&out)[0]["pass"].as_bool().unwrap());
}

#[test]
fn usage_and_domain_errors_exit_two() {
    for args in [
        vec!["compose", "--a", "0,0", "--s", "0", "--k", "1,x", "--q", "0,1"],
        vec!["compose", "--a", "0,0,0", "--s", "0", "--k", "1,0", "--q", "0,1"],
        vec!["compose", "--a", "0,0", "--s", "0", "--k", "1,0", "--q", "0,1", "--realization", "bogus"],
        vec!["compose", "--a", "0,0", "--s", "1", "--k", "0,3", "--q", "0,1"],
        vec!["verify", "--dim", "4", "--order", "0"],
        vec!["frobnicate"],
        vec![],
    ] {
        let out = ksnyder(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}
