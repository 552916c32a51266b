use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use closure_core::spaces::io::{read_space, write_space};
use serde_json::Value;
use tempfile::TempDir;

fn closure(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_closure"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const JPLUS: &str = r#"{"points": ["0", "1"], "closure": {"0": ["0", "1"], "1": ["1"]}}"#;
const J1: &str = r#"{"points": ["0", "1"], "closure": {"0": ["0", "1"], "1": ["0", "1"]}}"#;

#[test]
fn validate_accepts_and_rejects() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "jplus.json", JPLUS);
    let out = closure(&["validate", s(&good)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["ok"], true);

    let missing = write(
        &dir,
        "bad.json",
        r#"{"points": ["a", "b"], "closure": {"a": ["b"], "b": ["b"]}}"#,
    );
    let out = closure(&["validate", s(&missing)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("`a`"));

    let unknown = write(
        &dir,
        "unk.json",
        r#"{"points": ["a"], "closure": {"a": ["a", "z"]}}"#,
    );
    let out = closure(&["validate", s(&unknown)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("`z`"));

    let broken = write(&dir, "broken.json", "{\n  \"points\": [\n");
    let out = closure(&["validate", s(&broken)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn build_operations() {
    let dir = TempDir::new().unwrap();
    let j1 = write(&dir, "j1.json", J1);
    let out = closure(&["build", "product", s(&j1), s(&j1)]);
    assert_eq!(code(&out), 0);
    let square = read_space(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(square.len(), 4);

    let boxed = dir.path().join("boxed.json");
    let out = closure(&[
        "build",
        "inductive-product",
        s(&j1),
        s(&j1),
        "--out",
        s(&boxed),
    ]);
    assert_eq!(code(&out), 0);
    let out = closure(&["build", "tau", s(&boxed)]);
    let tau = read_space(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert!((0..4).all(|p| tau.singleton_closure(p) == tau.points()));

    let out = closure(&["build", "power", "--kind", "inductive", s(&j1), "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        read_space(&String::from_utf8_lossy(&out.stdout))
            .unwrap()
            .len(),
        1
    );

    let out = closure(&["build", "subspace", "std:cycle:6", "--points", "0,1,2"]);
    assert_eq!(
        read_space(&String::from_utf8_lossy(&out.stdout))
            .unwrap()
            .len(),
        3
    );
    let out = closure(&["build", "quotient", "std:cycle:6", "--points", "0,1,2"]);
    assert_eq!(
        read_space(&String::from_utf8_lossy(&out.stdout))
            .unwrap()
            .len(),
        4
    );
    let out = closure(&["build", "coproduct", s(&j1), "std:cycle:4"]);
    assert_eq!(
        read_space(&String::from_utf8_lossy(&out.stdout))
            .unwrap()
            .len(),
        6
    );
}

#[test]
fn pushout_glues_two_edges() {
    let dir = TempDir::new().unwrap();
    let pt = write(
        &dir,
        "pt.json",
        r#"{"points": ["p"], "closure": {"p": ["p"]}}"#,
    );
    let j1 = write(&dir, "j1.json", J1);
    let f = write(&dir, "f.json", r#"{"assignment": {"p": "1"}}"#);
    let g = write(&dir, "g.json", r#"{"assignment": {"p": "0"}}"#);
    let out = closure(&["build", "pushout", s(&pt), s(&j1), s(&j1), s(&f), s(&g)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let glued = read_space(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(glued.len(), 3);
}

#[test]
fn emitted_spaces_round_trip() {
    let dir = TempDir::new().unwrap();
    let j1 = write(&dir, "j1.json", J1);
    let jp = write(&dir, "jp.json", JPLUS);
    for args in [
        vec!["build", "product", s(&j1), s(&jp)],
        vec!["build", "inductive-product", s(&jp), s(&jp)],
        vec!["build", "power", s(&jp), "3"],
    ] {
        let out = closure(&args);
        let text = String::from_utf8_lossy(&out.stdout).trim_end().to_string();
        let again = write_space(&read_space(&text).unwrap());
        assert_eq!(again, text);
    }
}

#[test]
fn homology_reports() {
    for (flavor, product, interval) in [
        ("simplicial", "cross", "j1"),
        ("simplicial", "cross", "jplus"),
        ("cubical", "cross", "j1"),
        ("cubical", "cross", "jplus"),
        ("cubical", "inductive", "j1"),
        ("cubical", "inductive", "jplus"),
    ] {
        let out = closure(&[
            "homology",
            "std:discrete:1",
            "--flavor",
            flavor,
            "--product",
            product,
            "--interval",
            interval,
            "--max-dim",
            "3",
        ]);
        assert_eq!(code(&out), 0);
        let r = stdout_json(&out);
        for g in r["reduced"].as_array().unwrap() {
            assert_eq!(g["betti"], 0);
            assert!(g["torsion"].as_array().unwrap().is_empty());
        }
    }
    let out = closure(&["homology", "std:cycle:5", "--cohomology"]);
    let r = stdout_json(&out);
    assert_eq!(r["homology"][1]["betti"], 1);
    assert_eq!(r["cohomology"][1]["betti"], 1);

    let out = closure(&["homology", "std:cycle:5", "--interval", "I"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-finitary"));

    let out = closure(&["homology", "std:cycle:6", "--cap", "3"]);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());
}

#[test]
fn pi0_and_homotopy() {
    let out = closure(&["pi0", "std:jplus"]);
    assert_eq!(stdout_json(&out)["count"], 2);
    let out = closure(&["pi0", "std:jplus", "--interval", "jplus"]);
    assert_eq!(stdout_json(&out)["count"], 1);

    let out = closure(&["homotopy", "contractible", "std:path:1"]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out);
    assert_eq!(r["status"], "yes");
    assert_eq!(r["witness"]["maps"].as_array().unwrap().len(), 2);

    let out = closure(&["homotopy", "contractible", "std:path:6", "--budget", "1"]);
    assert_eq!(code(&out), 3);
    assert_eq!(stdout_json(&out)["status"], "inconclusive");

    let out = closure(&["homotopy", "contractible", "std:discrete:2"]);
    assert_eq!(stdout_json(&out)["status"], "no");

    let out = closure(&["homotopy", "classes", "std:path:1", "std:path:1"]);
    assert_eq!(stdout_json(&out)["count"], 1);
}

#[test]
fn homotopy_between_map_files() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "id.json", r#"{"assignment": {"0": "0", "1": "1"}}"#);
    let c = write(&dir, "c.json", r#"{"assignment": {"0": "0", "1": "0"}}"#);
    let out = closure(&[
        "homotopy",
        "maps",
        "std:path:1",
        "std:path:1",
        s(&id),
        s(&c),
    ]);
    assert_eq!(stdout_json(&out)["status"], "yes");
    let swap = write(&dir, "swap.json", r#"{"assignment": {"0": "1", "1": "0"}}"#);
    let out = closure(&[
        "homotopy",
        "maps",
        "std:jplus",
        "std:jplus",
        s(&id),
        s(&swap),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_worked_instances() {
    let dir = TempDir::new().unwrap();
    let cover = write(
        &dir,
        "c6.json",
        r#"{"parts": [["5","0","1","2","3"], ["2","3","4","5","0"]]}"#,
    );
    let out = closure(&["verify", "mv", "std:cycle:6", "--cover", s(&cover)]);
    assert_eq!(code(&out), 0);
    let r = &json_lines(&out)[0];
    assert_eq!(r["status"], "verified");
    let nodes = r["details"]["sequence"]["nodes"].as_array().unwrap();
    let h1 = nodes.iter().find(|n| n["label"] == "H1(X)").unwrap();
    assert_eq!(h1["group"]["betti"], 1);

    let jp = write(&dir, "jp.json", JPLUS);
    let square = dir.path().join("square.json");
    closure(&[
        "build",
        "inductive-product",
        s(&jp),
        s(&jp),
        "--out",
        s(&square),
    ]);
    let text = std::fs::read_to_string(&square).unwrap();
    let labels: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(labels["points"][0], "(0,0)");
    let cover = write(
        &dir,
        "ex.json",
        r#"{"parts": [["(0,0)"], ["(0,0)","(1,0)"], ["(0,0)","(0,1)"], ["(0,1)","(1,1)","(1,0)"]]}"#,
    );
    let out = closure(&[
        "verify",
        "cover-subcomplex",
        s(&square),
        "--cover",
        s(&cover),
        "--interval",
        "jplus",
        "--flavor",
        "cubical",
        "--product",
        "inductive",
    ]);
    assert_eq!(code(&out), 0);
    let r = &json_lines(&out)[0];
    assert_eq!(r["status"], "experimental");
    assert_eq!(r["details"]["equality"], false);

    let out = closure(&[
        "verify",
        "kunneth",
        "std:cycle:5",
        "std:path:1",
        "--flavor",
        "cubical",
        "--product",
        "inductive",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_lines(&out)[0]["status"], "unsupported");

    let out = closure(&["verify", "les", "std:cycle:5", "--a", "0,1"]);
    assert_eq!(json_lines(&out)[0]["status"], "verified");
    let out = closure(&[
        "verify",
        "excision",
        "std:cycle:6",
        "--a",
        "0,1,2,3,4",
        "--z",
        "2",
    ]);
    assert_eq!(json_lines(&out)[0]["status"], "verified");
    let out = closure(&["verify", "comparison", "std:cycle:5", "--interval", "jplus"]);
    assert_eq!(json_lines(&out)[0]["status"], "verified");
    let out = closure(&["verify", "uct", "std:cycle:5", "--coeff", "Zp:2"]);
    assert_eq!(json_lines(&out)[0]["status"], "verified");
    let out = closure(&[
        "verify",
        "ez",
        "std:cycle:4",
        "std:path:1",
        "--max-dim",
        "1",
    ]);
    assert_eq!(json_lines(&out)[0]["status"], "verified");
    let out = closure(&[
        "verify",
        "es-axioms",
        "--product",
        "inductive",
        "--flavor",
        "cubical",
    ]);
    assert_eq!(json_lines(&out)[0]["status"], "unsupported");
}

#[test]
fn random_corpora_are_deterministic() {
    let args = [
        "verify", "mv", "--random", "5", "--seed", "11", "--flavor", "cubical",
    ];
    let a = closure(&args);
    let b = closure(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let lines = json_lines(&a);
    assert_eq!(lines.len(), 5);
    assert!(lines.iter().all(|r| r["status"] == "verified"));
    let es = closure(&[
        "verify",
        "es-axioms",
        "--random",
        "4",
        "--points",
        "3",
        "--max-dim",
        "1",
    ]);
    assert_eq!(code(&es), 0);
    assert_eq!(json_lines(&es)[0]["status"], "verified");
}

#[test]
fn bad_config_is_an_input_error() {
    assert_eq!(
        code(&closure(&["homology", "std:cycle:5", "--coeff", "Zp:4"])),
        2
    );
    assert_eq!(
        code(&closure(&["homology", "std:cycle:5", "--cap", "0"])),
        2
    );
    let out = closure(&[
        "homology",
        "std:cycle:5",
        "--flavor",
        "simplicial",
        "--product",
        "inductive",
    ]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&closure(&["homology", "no/such/file.json"])), 2);
}
