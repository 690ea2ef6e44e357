use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const VILLARREAL: &str = "\
vars: a b c d e f g
f1: a b c
f2: b d e
f3: e f g
f4: c f g
";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rees-kit"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_ideal(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", stderr(o));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn classify_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_ideal(dir.path(), "v.ideal", VILLARREAL);
    let o = run(&["classify", &p]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("verdict: RtAtMost(2)"), "{text}");
    assert!(text.contains("UniqueEvenCycle"));

    let v = json(&run(&["classify", &p, "--json", "--oracle", "--s-max", "3"]));
    assert_eq!(v["verdict"]["kind"], "rt_at_most");
    assert_eq!(v["verdict"]["bound"], 2);
    assert_eq!(v["oracle"]["certified_lower"], 2);
    assert_eq!(v["versions"]["format"], 1);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
}

#[test]
fn classify_many_files_gives_an_array_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_ideal(dir.path(), "a.ideal", VILLARREAL);
    let b = write_ideal(dir.path(), "b.ideal", "vars: x y z\nf1: x y\nf2: y z\n");
    let v = json(&run(&["classify", &a, &b, "--json"]));
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[1]["verdict"]["kind"], "linear_type");

    let dot = dir.path().join("g.dot");
    let o = run(&["classify", &a, &b, "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(run(&["classify", &a, "--dot", dot.to_str().unwrap()])
        .status
        .success());
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("graph"), "{dot}");
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_ideal(dir.path(), "bad.ideal", "vars: x\nf1: x y\n");
    let o = run(&["classify", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2:"), "{}", stderr(&o));

    let o = run(&["classify", "/no/such/file.ideal"]);
    assert_eq!(o.status.code(), Some(2));

    let p = write_ideal(dir.path(), "v.ideal", VILLARREAL);
    let o = run(&["reduce", &p, "--alpha", "1,2", "--beta", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["reduce", &p, "--alpha", "1,9", "--beta", "2,3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["taylor", &p, "--degree", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn taylor_lists_the_layer() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_ideal(dir.path(), "v.ideal", VILLARREAL);
    let v = json(&run(&["taylor", &p, "--degree", "2", "--json"]));
    // 10 sequences of length 2 over 4 generators, one binomial per pair.
    assert_eq!(v["binomials"].as_array().unwrap().len(), 45);
    let text = stdout(&run(&["taylor", &p, "--degree", "1"]));
    assert_eq!(text.lines().filter(|l| l.starts_with("T[")).count(), 6);
    assert!(text.contains("T[(1),(2)]  d*e*T1 - a*c*T2"), "{text}");
}

#[test]
fn reduce_reports_chains_and_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_ideal(dir.path(), "v.ideal", VILLARREAL);
    let v = json(&run(&["reduce", &p, "--alpha", "1,1", "--beta", "2,2", "--json"]));
    assert_eq!(v["outcome"], "reduced");
    assert!(!v["chain"].as_array().unwrap().is_empty());

    let v = json(&run(&["reduce", &p, "--alpha", "1,3", "--beta", "2,4", "--json"]));
    assert_eq!(v["outcome"], "stuck");
    assert!(v["witness"].is_object());
    let text = stdout(&run(&["reduce", &p, "--alpha", "1,3", "--beta", "2,4"]));
    assert!(text.contains("even closed walk"), "{text}");
}

#[test]
fn rt_finds_the_degree_two_generator() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_ideal(dir.path(), "v.ideal", VILLARREAL);
    let v = json(&run(&["rt", &p, "--s-max", "3", "--json"]));
    assert_eq!(v["certified_lower"], 2);
    assert_eq!(v["minimal_generators"].as_array().unwrap().len(), 5);
    assert_eq!(v["unknown_count"], 0);
}

#[test]
fn random_is_deterministic_and_parses() {
    let a = stdout(&run(&["random", "--seed", "7"]));
    let b = stdout(&run(&["random", "--seed", "7"]));
    let c = stdout(&run(&["random", "--seed", "8"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
    let dir = tempfile::tempdir().unwrap();
    for shape in ["general", "forest", "odd-cycle", "even-cycle"] {
        let text = stdout(&run(&[
            "random",
            "--graph-shape",
            shape,
            "--n",
            "5",
            "--seed",
            "3",
        ]));
        let p = write_ideal(dir.path(), "r.ideal", &text);
        let v = json(&run(&["classify", &p, "--json"]));
        if shape == "forest" || shape == "odd-cycle" {
            assert_eq!(v["verdict"]["kind"], "linear_type", "{shape}");
        }
    }
}

#[test]
fn demos_run() {
    let v = json(&run(&["demo", "pentagon", "--json"]));
    assert_eq!(v["walk_length"], 6);
    let text = stdout(&run(&["demo", "family", "--n", "5"]));
    assert!(text.contains("No"), "{text}");
    let o = run(&["demo", "family", "--n", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cap_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_rees-kit"))
        .args(["demo", "villarreal"])
        .env("REES_KIT_CAP", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
