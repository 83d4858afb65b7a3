use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel).to_string_lossy().into_owned()
}

fn kh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kh")).args(args).env_remove("KH_MAX_CROSSINGS").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn homology_of_the_trefoil() {
    let out = kh(&["homology", &corpus("diagrams/trefoil3.json"), "--ring", "z"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["ring"], "Z");
    let torsion: Vec<&Value> = v["table"].as_array().unwrap().iter().filter(|g| g["torsion"] != Value::Array(vec![])).collect();
    assert_eq!(torsion.len(), 1);
    assert_eq!((torsion[0]["i"].as_i64(), torsion[0]["j"].as_i64()), (Some(3), Some(7)));
}

#[test]
fn several_rings_give_an_array() {
    let out = kh(&["homology", &corpus("diagrams/unknot.json"), "--ring", "z,q,f3"]);
    assert_eq!(json(&out).as_array().unwrap().len(), 3);
}

#[test]
fn jones_of_the_trefoil() {
    let out = kh(&["jones", &corpus("diagrams/trefoil3.json")]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "q^1 + q^3 + q^5 - q^9");
}

#[test]
fn ribbon_verify_passes_on_the_square_knot_movie() {
    let out = kh(&["ribbon-verify", &corpus("movies/square_knot_ribbon.json"), "--ring", "q,f2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["is_ribbon"], true);
    for r in v["results"].as_array().unwrap() {
        assert_eq!(r["injective"], true);
    }
}

#[test]
fn ribbon_verify_fails_on_a_reversed_movie() {
    let dir = tempfile::tempdir().unwrap();
    let m = kh_core::cobordism::Movie::from_json(&std::fs::read_to_string(corpus("movies/square_knot_ribbon.json")).unwrap())
        .unwrap();
    let path = dir.path().join("back.json");
    std::fs::write(&path, m.reverse().to_value().to_string()).unwrap();
    let out = kh(&["ribbon-verify", path.to_str().unwrap(), "--ring", "f2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["is_ribbon"], false);
}

#[test]
fn compare_exit_code_follows_the_verdict() {
    let (u, t) = (corpus("diagrams/unknot.json"), corpus("diagrams/trefoil3.json"));
    assert_eq!(kh(&["compare", &t, &t]).status.code(), Some(0));
    let back = kh(&["compare", &t, &u]);
    assert_eq!(back.status.code(), Some(1));
    assert_eq!(json(&back)["checks"]["breadth"], false);
}

#[test]
fn cobmap_reports_bidegree() {
    let out = kh(&["cobmap", &corpus("movies/square_knot_ribbon.json"), "--ring", "f2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["bidegree"], serde_json::json!([0, 0]));
    assert_eq!(v["euler_characteristic"], 0);
}

#[test]
fn invariants_of_the_unknot() {
    let v = json(&kh(&["invariants", &corpus("diagrams/unknot.json")]));
    assert_eq!((v["q_min"].as_i64(), v["q_max"].as_i64(), v["delta_width"].as_i64()), (Some(-1), Some(1), Some(2)));
    assert_eq!(v["is_thin"], true);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_site = dir.path().join("bad.json");
    std::fs::write(&bad_site, r#"{"start":{"pd":[],"loops":[1]},"events":[{"kind":"death","site":{"arc":7}}]}"#).unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["homology".into(), "/no/such/file.json".into()],
        vec!["homology".into(), corpus("diagrams/unknot.json"), "--ring".into(), "f4".into()],
        vec!["cobmap".into(), bad_site.to_string_lossy().into_owned()],
        vec!["frobnicate".into()],
    ];
    for args in cases {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = kh(&a);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn crossing_limit_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_kh"))
        .args(["homology", &corpus("diagrams/trefoil3.json")])
        .env("KH_MAX_CROSSINGS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["homology".to_string(), corpus("knots/8_19.json"), "--ring".into(), "z,f2".into()],
        vec!["ribbon-verify".to_string(), corpus("movies/8_20_ribbon.json"), "--ring".into(), "z".into()],
    ] {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(kh(&a).stdout, kh(&a).stdout);
    }
}
