use std::path::PathBuf;
use std::process::{Command, Output};

use vcat::cli::WorkspaceFile;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn vcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vcat"))
        .args(args)
        .env_remove("VCAT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

#[test]
fn validate_passes_on_every_backend() {
    for f in ["relations.json", "functions.json", "vectors.json"] {
        let o = vcat(&["validate", &path(f)]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stdout(&o));
        assert!(stdout(&o).contains("functor"), "{f}");
    }
}

#[test]
fn compose_relations_agrees_with_oracle() {
    let o = vcat(&["compose", &path("relations.json"), "R", "Y", "S"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("oracle agreement: exact"), "{out}");
    // x1 only reaches y0 and y1, which only relate to z0
    assert!(out.contains("(x1, z0): true") && out.contains("(x1, z1): false"), "{out}");
}

#[test]
fn compose_rejects_wrong_middle() {
    let o = vcat(&["compose", &path("relations.json"), "R", "X", "S"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`R` does not end at `X`"));
}

#[test]
fn segal_passes_on_chains() {
    for f in ["relations.json", "functions.json"] {
        let chain = if f == "relations.json" { "RS" } else { "MN" };
        let o = vcat(&["segal", &path(f), chain]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("Segal condition: pass"));
    }
}

#[test]
fn fun_levels_and_checks() {
    let o = vcat(&["fun", &path("relations.json"), "X", "Y", "--level", "3", "--segal"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    // monotone maps from a 2-chain times [k] into the order on Y
    assert!(out.contains("level 0: 4 functors"), "{out}");
    assert!(out.contains("Segal map at level 3: pass"), "{out}");
    let o = vcat(&["fun", &path("relations.json"), "X", "Z", "--complete"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("completeness: PI0-SURROGATE: pass"));
    let o = vcat(&["fun", &path("relations.json"), "X", "Y", "--level", "1", "--segal"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn probes() {
    let o = vcat(&["probe", "cofinal", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("NECESSARY-ONLY: pass"), "{}", stdout(&o));
    for kind in ["fiber", "terminal", "sifted"] {
        let o = vcat(&["probe", kind, "--bound", "2"]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stdout(&o));
    }
    let o = vcat(&["probe", "cofinal", "--sizes", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failed_check_exits_one() {
    let o = vcat(&["validate", &path("broken_functor.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("functor twist: FAIL"), "{}", stdout(&o));
}

#[test]
fn dangling_reference_is_named() {
    let o = vcat(&["validate", &path("dangling.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Missing"), "{}", stderr(&o));
}

#[test]
fn parse_errors_carry_positions() {
    let o = vcat(&["validate", &path("syntax.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: 5:30: trailing comma\n"), "{}", stderr(&o));
    let o = vcat(&["validate", &path("duplicate.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.starts_with("error: 6:7: duplicate name `X`"), "{err}");
}

#[test]
fn unknown_command_is_a_usage_error() {
    assert_eq!(vcat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(vcat(&["validate"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_three() {
    let o = vcat(&["fun", &path("vectors.json"), "C", "B", "--level", "2", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_vcat"))
        .args(["probe", "sifted", "--bound", "2"])
        .env("VCAT_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn reports_are_deterministic() {
    let args = ["compose", &path("functions.json"), "M", "B", "N"];
    let a = vcat(&args);
    let b = vcat(&args);
    assert_eq!(a.stdout, b.stdout);
    let m = vcat(&["segal", &path("functions.json"), "MN", "--machine"]);
    let v: serde_json::Value = serde_json::from_slice(&m.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"][0]["title"], "Segal condition");
    assert_eq!(m.stdout, vcat(&["segal", &path("functions.json"), "MN", "--machine"]).stdout);
}

#[test]
fn selftest_runs() {
    let o = vcat(&["selftest", "--seed", "3", "--count", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("seed 3, 2 instances"));
}

#[test]
fn canonical_files_round_trip() {
    for f in ["relations.json", "functions.json", "vectors.json", "broken_functor.json"] {
        let ws = WorkspaceFile::read(&fixture(f)).unwrap();
        let text = ws.to_canonical();
        assert_eq!(WorkspaceFile::parse(&text).unwrap(), ws, "{f}");
        assert_eq!(WorkspaceFile::parse(&text).unwrap().to_canonical(), text, "{f}");
    }
    let golden = std::fs::read_to_string(fixture("canonical.json")).unwrap();
    let ws = WorkspaceFile::parse(&golden).unwrap();
    assert_eq!(ws.to_canonical(), golden);
    assert_eq!(ws, WorkspaceFile::read(&fixture("relations.json")).unwrap());
}

#[test]
fn fmt_prints_the_canonical_form() {
    let o = vcat(&["fmt", &path("relations.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("canonical.json")).unwrap());
}
