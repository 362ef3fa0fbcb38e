use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_segal-abacus"));
    c.env_remove("SEGAL_ABACUS_FIXTURES");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("the binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(TempDir::new().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn arg(&self, name: &str) -> String {
        self.path(name).to_str().unwrap().to_string()
    }

    fn gen(&self, name: &str, args: &[&str]) -> String {
        let out = self.arg(name);
        let mut all = vec!["gen-example"];
        all.extend_from_slice(args);
        all.extend_from_slice(&["--out", &out]);
        let o = run(&all);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        out
    }

    fn construct(&self, what: &str, input: &str, name: &str) -> String {
        let out = self.arg(name);
        let o = run(&["construct", what, "--in", input, "--out", &out]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        out
    }
}

fn read(path: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(Path::new(path)).unwrap()).unwrap()
}

#[test]
fn nerve_of_a_three_chain() {
    let d = Dir::new();
    let x = d.gen("x.json", &["nerve-poset", "--size", "3", "--trunc", "3"]);
    let v = read(&x);
    assert_eq!(v["shape"], "sset");
    assert_eq!(v["levels"]["0"].as_array().unwrap().len(), 3);
    assert_eq!(v["levels"]["1"].as_array().unwrap().len(), 6);
    let o = run(&["check", "segal", "--in", &x]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"], "pass");
}

#[test]
fn partial_monoid_is_2segal_but_not_segal() {
    let d = Dir::new();
    let x = d.gen("pm.json", &["partial-monoid", "--trunc", "4"]);
    let o = run(&["check", "2segal", "--in", &x]);
    assert_eq!(code(&o), 0);
    let o = run(&["check", "segal", "--in", &x]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    assert_eq!(r["verdict"], "fail");
    assert!(!r["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn monoid_from_a_table() {
    let d = Dir::new();
    let table = d.path("z2.json");
    std::fs::write(
        &table,
        r#"{"elements": ["e", "a"], "unit": "e", "mul": [["e", "a"], ["a", "e"]]}"#,
    )
    .unwrap();
    let x = d.gen(
        "z2.sset.json",
        &[
            "nerve-monoid",
            "--table",
            table.to_str().unwrap(),
            "--trunc",
            "3",
        ],
    );
    assert_eq!(read(&x)["levels"]["2"].as_array().unwrap().len(), 4);
    assert_eq!(code(&run(&["check", "segal", "--in", &x])), 0);
}

#[test]
fn constant_simplicial_set() {
    let d = Dir::new();
    let x = d.gen("c.json", &["constant", "--size", "3", "--trunc", "4"]);
    let v = read(&x);
    for n in 0..=4 {
        assert_eq!(v["levels"][n.to_string()].as_array().unwrap().len(), 3);
    }
    let f = d.construct("to-point", &x, "f.json");
    for c in ["left-fibration", "right-fibration", "culf"] {
        assert_eq!(code(&run(&["check", c, "--in", &f])), 0, "{c}");
    }
}

#[test]
fn q_star_satisfies_star() {
    let d = Dir::new();
    let x = d.gen("x.json", &["nerve-poset", "--size", "3", "--trunc", "4"]);
    let f = d.construct("identity", &x, "f.json");
    let b = d.construct("qstar", &f, "b.json");
    assert_eq!(read(&b)["shape"], "dset");
    for c in ["star", "unit", "bicomodule", "invertible-abacus"] {
        let o = run(&["check", c, "--in", &b]);
        assert_eq!(code(&o), 0, "{c}: {}", String::from_utf8_lossy(&o.stdout));
    }
    let back = d.construct("qupper", &b, "back.json");
    assert_eq!(read(&back)["source"], read(&f)["source"]);
}

#[test]
fn round_trips() {
    let d = Dir::new();
    let x = d.gen("pm.json", &["partial-monoid", "--trunc", "5"]);
    let o = run(&["roundtrip", "boors", "--in", &x]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let f = d.construct("to-point", &x, "f.json");
    for what in ["star", "M"] {
        let o = run(&["roundtrip", what, "--in", &f, "--trunc", "4"]);
        assert_eq!(
            code(&o),
            0,
            "{what}: {}",
            String::from_utf8_lossy(&o.stdout)
        );
    }
}

#[test]
fn suite_over_the_standard_corpus() {
    let o = run(&["run-suite", "star", "--jobs", "2"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["suite"], "star");
    assert!(r["cases"].as_array().unwrap().len() >= 20);
    assert!(r["checked"].as_u64().unwrap() > 0);
}

#[test]
fn suite_over_a_directory() {
    let d = Dir::new();
    let corpus = d.path("corpus");
    std::fs::create_dir(&corpus).unwrap();
    let x = corpus.join("a.json");
    let o = run(&[
        "gen-example",
        "nerve-poset",
        "--size",
        "2",
        "--trunc",
        "5",
        "--out",
        x.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let o = bin()
        .args(["run-suite", "boors"])
        .env("SEGAL_ABACUS_FIXTURES", &corpus)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["cases"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_codes_for_bad_input() {
    let d = Dir::new();
    let bad = d.path("bad.json");
    std::fs::write(&bad, r#"{"shape": "sset"}"#).unwrap();
    let o = run(&["check", "segal", "--in", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let x = d.gen("x.json", &["nerve-poset", "--size", "2", "--trunc", "3"]);
    assert_eq!(code(&run(&["check", "no-such-check", "--in", &x])), 2);
    assert_eq!(code(&run(&["check", "star", "--in", &x])), 2);
    assert_eq!(code(&run(&["gen-example", "no-such-kind"])), 2);

    let mut v = read(&x);
    v["actions"]["d0@1"] = serde_json::json!({});
    let broken = d.path("broken.json");
    std::fs::write(&broken, v.to_string()).unwrap();
    assert_eq!(
        code(&run(&["check", "segal", "--in", broken.to_str().unwrap()])),
        2
    );
}

#[test]
fn precondition_and_vacuous_exit_codes() {
    let d = Dir::new();
    let low = d.gen("low.json", &["simplex", "--dim", "2", "--trunc", "2"]);
    let o = run(&["check", "2segal", "--in", &low]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["verdict"], "precondition");

    let point = d.gen("p.json", &["nerve-poset", "--size", "1", "--trunc", "0"]);
    let o = run(&["check", "validate", "--in", &point]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["verdict"], "vacuous");
}

#[test]
fn output_is_deterministic() {
    let d = Dir::new();
    let a = d.gen("a.json", &["boolean-lattice", "--dim", "2", "--trunc", "3"]);
    let b = d.gen("b.json", &["boolean-lattice", "--dim", "2", "--trunc", "3"]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let one = run(&["run-suite", "dictionary", "--jobs", "1", "--trunc", "4"]);
    let four = run(&["run-suite", "dictionary", "--jobs", "4", "--trunc", "4"]);
    assert_eq!(one.stdout, four.stdout);
    let r1 = run(&[
        "run-suite",
        "cheatsheet",
        "--random",
        "3",
        "--seed",
        "11",
        "--trunc",
        "4",
    ]);
    let r2 = run(&[
        "run-suite",
        "cheatsheet",
        "--random",
        "3",
        "--seed",
        "11",
        "--trunc",
        "4",
    ]);
    assert_eq!(code(&r1), 0);
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn files_survive_a_round_trip() {
    let d = Dir::new();
    let x = d.gen(
        "x.json",
        &[
            "nerve-poset",
            "--size",
            "3",
            "--relations",
            "0<1,0<2",
            "--trunc",
            "4",
        ],
    );
    let f = d.construct("to-point", &x, "f.json");
    let b = d.construct("qstar", &f, "b.json");
    let tot = d.construct("tot", &x, "tot.json");
    let a = d.construct("boors-tot", &x, "a.json");
    for (path, shape) in [
        (&x, "sset"),
        (&f, "smap"),
        (&b, "dset"),
        (&tot, "bisset"),
        (&a, "sigmaset"),
    ] {
        let v = read(path);
        assert_eq!(v["shape"], shape);
        let obj = segal_abacus_cli::format::Object::from_json(&v).unwrap();
        assert!(obj.validate().passed());
        assert_eq!(obj.to_json(), v);
        let o = run(&["check", "validate", "--in", path]);
        assert_eq!(code(&o), 0, "{shape}");
    }
}

#[test]
fn text_format() {
    let d = Dir::new();
    let x = d.gen("x.json", &["partial-monoid", "--trunc", "3"]);
    let o = run(&["check", "segal", "--in", &x, "--format", "text"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("segal: fail"));
    assert!(text.contains("witness"));
}
