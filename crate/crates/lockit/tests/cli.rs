use std::path::PathBuf;
use std::process::{Command, Output};

fn specs(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn lockit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lockit"))
        .args(args)
        .env_remove("LOCKIT_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write_temp(text: &str) -> tempfile::NamedTempFile {
    let f = tempfile::Builder::new().suffix(".loc").tempfile().unwrap();
    std::fs::write(f.path(), text).unwrap();
    f
}

const BROKEN: &str = "\
group s4 degree 4
gen (1 2)
gen (1 2 3 4)
locality l group s4 prime 2
sylow auto
delta explicit { (1 3)(2 4), (1 2)(3 4) }
";

#[test]
fn check_all_on_shipped_file_passes() {
    let out = lockit(&["check", specs("gl3_2.loc").to_str().unwrap(), "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).ends_with("result: PASS\n"));
}

#[test]
fn validate_notes_auto_closure_and_strict_fails() {
    let f = write_temp(BROKEN);
    let path = f.path().to_str().unwrap();
    let out = lockit(&["validate", path]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("note: the given objects were closed"));
    let out = lockit(&["validate", "--strict", path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL objects-closed-as-given"));
}

#[test]
fn catalog_free1_json_has_empty_violations() {
    let out = lockit(&["catalog", "free1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["tool"]["name"], "lockit");
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
    let checks = v["sections"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["failed"] == 0 && c["name"].as_str().unwrap().starts_with("axioms/")));
    assert_eq!(checks.len(), 12);
}

#[test]
fn catalog_o4plus2_is_not_a_group() {
    let out = lockit(&["catalog", "o4plus2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let facts = &v["sections"][0]["facts"];
    assert_eq!(facts["carrier"], "72");
    assert_eq!(facts["is-group"], "false");
}

#[test]
fn catalog_gl32_small_has_forty_elements() {
    let out = lockit(&["catalog", "gl32-small", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["sections"][0]["facts"]["carrier"], "40");
}

#[test]
fn parse_errors_exit_two_with_location() {
    let f = write_temp("group g degree 3\ngen (1 2)\nlocality l group g prime 2\ndelta bogus-mode\n");
    let out = lockit(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4, column 7"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lockit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lockit(&["catalog", "nonesuch"]).status.code(), Some(2));
    assert_eq!(lockit(&["validate", "/nonexistent/x.loc"]).status.code(), Some(2));
    let o4 = specs("o4plus2.loc");
    let out = lockit(&["quotient", o4.to_str().unwrap(), "--normal", "nonesuch"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn order_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lockit"))
        .args(["validate", specs("gl3_2.loc").to_str().unwrap()])
        .env("LOCKIT_MAX_ORDER", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    let out = Command::new(env!("CARGO_BIN_EXE_lockit"))
        .args(["validate", specs("gl3_2.loc").to_str().unwrap()])
        .env("LOCKIT_MAX_ORDER", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let f = specs("o4plus2.loc");
    let args = ["normals", f.to_str().unwrap(), "--json"];
    let a = lockit(&args);
    let b = lockit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn subcommands_on_o4plus2() {
    let f = specs("o4plus2.loc");
    let f = f.to_str().unwrap();
    for args in [
        vec!["omega", f],
        vec!["fusion", f],
        vec!["normals", f],
        vec!["products", f, "--normals", "threes,even"],
        vec!["quotient", f, "--normal", "threes"],
        vec!["quotient", f, "--normal", "(1 2 3)"],
        vec!["check", f, "--suite", "cosets"],
        vec!["check", f, "--suite", "sylow", "--max-word-len", "4"],
    ] {
        let out = lockit(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = lockit(&["quotient", f, "--normal", "threes", "--json"]);
    let v = json(&out);
    assert_eq!(v["sections"][0]["facts"]["quotient-carrier"], 40);
    let out = lockit(&["normals", f, "--json"]);
    assert_eq!(json(&out)["sections"][0]["facts"]["count"], 9);
}

#[test]
fn library_entry_point_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = lockit::cli::run(["lockit", "catalog", "free1"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, lockit(&["catalog", "free1"]).stdout);
}
