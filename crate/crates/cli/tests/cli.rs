use std::process::{Command, Output};

use dunkl::polyring::{Poly, PolyRecord};
use dunkl::symgroup::Permutation;
use serde_json::Value;

fn dunkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dunkl")).args(args).output().expect("run dunkl")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = dunkl(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--format", "json"];
    a.extend_from_slice(args);
    serde_json::from_str(&ok(&a)).expect("valid json")
}

fn poly(s: &str) -> Poly {
    Poly::parse(s).unwrap()
}

#[test]
fn dschubert_of_the_longest_element() {
    let out = ok(&["dschubert", "--n", "3", "--perm", "3,2,1"]);
    assert_eq!(poly(out.trim()), poly("(x1-y1)*(x1-y2)*(x2-y1)"));
}

#[test]
fn printed_polynomials_round_trip() {
    for args in [
        ["dschubert", "--perm", "2,4,1,3"],
        ["qschubert", "--perm", "3,2,1"],
        ["schubert", "--perm", "1,4,3,2"],
    ] {
        let text = ok(&args);
        let v = json(&args);
        let rec: PolyRecord = serde_json::from_value(v["poly"].clone()).unwrap();
        assert_eq!(rec.schema, "dunkl.poly/1");
        let p = Poly::from_record(&rec).unwrap();
        assert_eq!(poly(text.trim()), p, "{args:?}");
        assert_eq!(p.to_string(), text.trim());
    }
}

#[test]
fn structure_constant_in_y_and_simple_roots() {
    let w = Permutation::parse("s:3,5,4,7,6,5", Some(9)).unwrap();
    let u = w.apply_transposition(2, 6).unwrap().apply_transposition(1, 6).unwrap().apply_transposition(5, 9).unwrap();
    let u = u.to_string();
    let out = ok(&["structconst", "--n", "9", "--mk", "5,5", "--w", "s:3,5,4,7,6,5", "--u", &u]);
    assert_eq!(out, "(y1-y4)*(y1-y6)\nalpha: (a1+a2+a3)*(a1+a2+a3+a4+a5)\n");
    let v = json(&["structconst", "--n", "9", "--mk", "5,5", "--w", "s:3,5,4,7,6,5", "--u", &u]);
    assert_eq!(v["schema"], "dunkl.structconst/1");
    assert_eq!(v["y_form"], "(y1-y4)*(y1-y6)");
    let rec: PolyRecord = serde_json::from_value(v["coefficient"].clone()).unwrap();
    assert_eq!(Poly::from_record(&rec).unwrap(), poly("(y1-y4)*(y1-y6)"));
}

#[test]
fn products_of_dunkl_elements() {
    assert_eq!(ok(&["dunkl-eval", "--n", "2", "--poly", "z1*z2"]), "perm 1,2 : y1*y2 - t\n");
    assert_eq!(ok(&["pieri", "--n", "2", "--m", "2", "--k", "2"]), "perm 1,2 : y1*y2 - t\n");
    assert_eq!(ok(&["pieri", "--n", "2", "--m", "2", "--k", "2", "--t0"]), "perm 1,2 : y1*y2\n");
}

#[test]
fn normal_forms() {
    assert_eq!(ok(&["normalize", "[1,2]*x1", "--n", "2"]), "x2*[1,2] + t\n");
    assert_eq!(ok(&["normalize", "[1,2]^2", "--n", "3"]), "0\n");
    assert_eq!(ok(&["normalize", "[1,2]^2", "--n", "3", "--quantum"]), "q1_2\n");
}

#[test]
fn verify_elementary_relations_passes() {
    let out = ok(&["verify", "elementary-relations", "--n", "2"]);
    assert!(out.starts_with("PASS elementary-relations"), "{out}");
    let v = json(&["verify", "elementary-relations", "--n", "2"]);
    assert_eq!(v["schema"], "dunkl.verify/1");
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_all_is_reproducible() {
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_dunkl"))
            .args(["--format", "json", "verify", "all", "--n", "3"])
            .env("DUNKL_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        o.stdout
    };
    let first = run("1");
    assert_eq!(first, run("1"));
    assert_eq!(first, run("4"));
    let v: Value = serde_json::from_slice(&first).unwrap();
    let ids: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(ids.len() > 10);
}

#[test]
fn distinct_exit_codes() {
    let code = |args: &[&str]| dunkl(args).status.code().unwrap();
    assert_eq!(code(&["schubert", "--perm", "1,1,2"]), 2);
    assert_eq!(code(&["schubert", "--perm", "s:7", "--n", "3"]), 2);
    assert_eq!(code(&["verify", "bogus", "--n", "2"]), 2);
    assert_eq!(code(&["normalize", "[1,2", "--n", "3"]), 2);
    assert_eq!(code(&["dunkl-eval", "--n", "10", "--poly", "z1"]), 3);
    assert_eq!(code(&["verify", "all", "--n", "6"]), 3);
    assert_eq!(code(&["verify", "pieri-ideal", "--n", "4", "--degmax", "7"]), 4);
}

#[test]
fn errors_go_to_stderr() {
    let o = dunkl(&["schubert", "--perm", "1,1,2"]);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("permutation"));
}
