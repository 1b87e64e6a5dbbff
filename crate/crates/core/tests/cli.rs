mod common;

use std::fs;
use std::path::Path;

use qlsmodcat::cli::{run_command, EXIT_INVALID, EXIT_OK, EXIT_VERIFICATION};
use qlsmodcat::dump::Dump;
use qlsmodcat::input::DatumInput;

use common::*;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qlsmodcat").chain(args.iter().copied());
    let code = run_command(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_input(dir: &Path, name: &str, input: &DatumInput) -> String {
    let p = dir.join(name);
    fs::write(&p, input.to_json()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn validate_reports_heights() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(dir.path(), "d.json", &DatumInput::from_datum(&sweedler()));
    let (code, out, _) = run(&["validate", &f]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "valid, N=[2]");
    let (code, out, _) = run(&["validate", &f, "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["datum"]["N"], serde_json::json!([2]));
}

#[test]
fn invalid_and_malformed_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"group":{"orders":[2]},"g":[[1]],"chi":[[0]]}"#).unwrap();
    let (code, out, _) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(out.contains("qls1"), "{out}");
    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{\"group\": {\"orders\": [2]},\n \"g\": [[1]], \"chi\": [[1]],\n \"modcat\": {\"w\": 3}}").unwrap();
    let (code, _, err) = run(&["build-hopf", "--no-cache", junk.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("modcat"), "{err}");
    let (code, _, err) = run(&["build-hopf", "--no-cache", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(!err.is_empty());
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn classify_sweedler() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(dir.path(), "d.json", &DatumInput::from_datum(&sweedler()));
    let report = dir.path().join("r.json");
    let (code, out, _) = run(&["classify", &f, "--sample", "0,1", "-o", report.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.trim_end().ends_with("total: 4 rows, 6 representatives"), "{out}");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["total_representatives"], 6);
}

#[test]
fn corrupted_dump_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(dir.path(), "d.json", &DatumInput::from_datum(&sweedler()));
    let dump = dir.path().join("h.json");
    let (code, _, _) = run(&["build-hopf", "--no-cache", &f, "-o", dump.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let (code, _, _) = run(&["verify", dump.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&dump).unwrap()).unwrap();
    let rows = v["antipode"].as_array_mut().unwrap();
    rows[1][2] = serde_json::json!({"L": 1, "c": ["5"]});
    fs::write(&dump, v.to_string()).unwrap();
    let (code, out, _) = run(&["verify", dump.to_str().unwrap()]);
    assert_eq!(code, EXIT_VERIFICATION);
    assert!(out.contains("antipode"), "{out}");
}

#[test]
fn every_artifact_reloads_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let input = DatumInput::from_datum(&z4())
        .with_lifting(&z4_mu())
        .with_modcat(&z4(), &qlsmodcat::modcat::ModCatDatum::coordinate(&[0], trivial_psi(&z4())));
    let f = write_input(dir.path(), "d.json", &input);
    for cmd in ["build-hopf", "build-lifting", "build-algebra", "transport"] {
        let out = dir.path().join(format!("{cmd}.json"));
        let (code, summary, err) = run(&[cmd, "--no-cache", &f, "-o", out.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK, "{cmd}: {summary}{err}");
        let text = fs::read_to_string(&out).unwrap();
        Dump::from_json(&text).unwrap();
        let (code, summary, _) = run(&["verify", out.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK, "{cmd}: {summary}");
    }
}

#[test]
fn transport_reports_the_block_change() {
    let dir = tempfile::tempdir().unwrap();
    let input = DatumInput::from_datum(&z4())
        .with_lifting(&z4_mu())
        .with_modcat(&z4(), &qlsmodcat::modcat::ModCatDatum::coordinate(&[0], trivial_psi(&z4())));
    let f = write_input(dir.path(), "d.json", &input);
    let (code, out, _) = run(&["transport", "--no-cache", "--format", "json", &f]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["structure_preserved"], true);
    assert_eq!(v["blocks_preserved"], false);
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    std::env::set_var("QLSMODCAT_CACHE_DIR", &cache);
    let f = write_input(dir.path(), "d.json", &DatumInput::from_datum(&clifford()));
    let (code, first, _) = run(&["build-hopf", &f]);
    assert_eq!(code, EXIT_OK);
    assert!(first.contains("cache miss"), "{first}");
    let (_, second, _) = run(&["build-hopf", &f]);
    assert!(second.contains("cache hit"), "{second}");
    let (_, third, _) = run(&["build-hopf", &f, "--conductor", "4"]);
    assert!(third.contains("cache miss") && third.contains("conductor 4"), "{third}");
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 4);
    let (_, skipped, _) = run(&["build-hopf", &f, "--no-cache"]);
    assert!(skipped.contains("cache disabled"), "{skipped}");
}

#[test]
fn classify_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(dir.path(), "d.json", &DatumInput::from_datum(&clifford()));
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let (code, _, _) = run(&["classify", &f, "--seed", "11", "--no-cache", "-o", p.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}
