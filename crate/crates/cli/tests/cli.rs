use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn polydyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polydyn"))
        .args(args)
        .current_dir(root())
        .env_remove("POLYDYN_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polydyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn help_and_version() {
    let o = polydyn(&["--help"]);
    assert!(o.status.success());
    for sub in ["check", "compile", "simulate", "hom", "laws", "canon", "unroll", "cofree"] {
        assert!(stdout(&o).contains(sub), "--help lacks {sub}");
    }
    let o = polydyn(&["--version"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), format!("polydyn {}", env!("CARGO_PKG_VERSION")));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(polydyn(&[]).status.code(), Some(2));
    assert_eq!(polydyn(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(polydyn(&["hom", "data/p.json", "data/q.json"]).status.code(), Some(2));
    assert_eq!(polydyn(&["hom", "data/p.json", "data/q.json", "--enumerate"]).status.code(), Some(2));
    let o = polydyn(&["check", "data/no-such-file.wd"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no-such-file.wd"));
}

#[test]
fn check_accepts_the_golden_files() {
    for name in ["control", "supplier", "attach"] {
        let o = polydyn(&["check", &format!("data/{name}.wd")]);
        assert!(o.status.success(), "{name}: {}", stderr(&o));
        assert!(stdout(&o).contains("ok"));
    }
}

#[test]
fn check_reports_violations_with_exit_1() {
    let path = scratch("fanin.wd");
    std::fs::write(
        &path,
        "set A = {a0, a1}\n\
         box P {\n  out x : A;\n}\n\
         box Q {\n  out x : A;\n}\n\
         box R {\n  in x : A;\n}\n\
         connect P.x -> R.x\n\
         connect Q.x -> R.x\n",
    )
    .unwrap();
    let o = polydyn(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("fan-in"), "{}", stderr(&o));

    std::fs::write(&path, "set A = {a0, a1\n").unwrap();
    let o = polydyn(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains(":2:1"), "{}", stderr(&o));
}

#[test]
fn hom_counts_and_enumerates() {
    let o = polydyn(&["hom", "data/p.json", "data/q.json", "--count"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "264");

    let out = scratch("homs.json");
    let o = polydyn(&["hom", "data/p.json", "data/q.json", "--enumerate", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 264);
}

#[test]
fn malformed_polynomial_exits_2() {
    let path = scratch("bad.json");
    std::fs::write(&path, "{\"positions\": [").unwrap();
    let o = polydyn(&["canon", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn canon_and_cofree() {
    let o = polydyn(&["canon", "data/q.json"]);
    assert!(o.status.success());
    let again = scratch("canon.json");
    std::fs::write(&again, stdout(&o)).unwrap();
    let o2 = polydyn(&["canon", again.to_str().unwrap()]);
    assert_eq!(stdout(&o), stdout(&o2), "canonical form is idempotent");

    let o = polydyn(&["cofree", "data/q.json", "--depth", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // y⁵+1: c₀ = 1, c₁ = 2, c₂ = 2⁵ + 1
    assert_eq!(v["position_counts"], serde_json::json!([1, 2, 33]));
}

#[test]
fn compile_simulate_and_unroll() {
    let out = scratch("control.json");
    let o = polydyn(&["compile", "data/control.wd", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(out.exists());

    // an open system needs inputs
    let o = polydyn(&["simulate", "data/control.wd", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let inputs = scratch("inputs.txt");
    std::fs::write(&inputs, "a1\na0\na1\n").unwrap();
    let o = polydyn(&["simulate", "data/control.wd", "--steps", "3", "--input", inputs.to_str().unwrap(), "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 5, "header, three steps and the final state");

    let o = polydyn(&["simulate", "data/supplier.wd", "--steps", "5"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 5);

    let o = polydyn(&["unroll", "data/control.wd", "--box", "Plant", "--depth", "2", "--format", "dot"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("digraph"));
    let o = polydyn(&["unroll", "data/control.wd", "--box", "Nowhere", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(2));

    // attach.wd has no machines to run
    let o = polydyn(&["simulate", "data/attach.wd", "--steps", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn laws_are_seeded() {
    let args = ["laws", "--suite", "core", "--samples", "20", "--seed", "7"];
    let (a, b) = (polydyn(&args), polydyn(&args));
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);

    let from_env = Command::new(env!("CARGO_BIN_EXE_polydyn"))
        .args(["laws", "--suite", "core", "--samples", "20"])
        .env("POLYDYN_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(from_env.stdout, a.stdout, "POLYDYN_SEED is the default seed");

    assert_eq!(polydyn(&["laws", "--suite", "nonsense"]).status.code(), Some(2));
}
