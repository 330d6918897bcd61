use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

use raygroup_cli::session::{elaborate, Value as Decl};
use raygroup_cli::{execute, parse_script, Options};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_raygroup"));
    c.env_remove("RAYGROUP_FAULT").env_remove("RAYGROUP_THREADS");
    c
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn stdin_run(script: &str, args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut c = bin();
    c.arg("-").args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in envs {
        c.env(k, v);
    }
    let mut child = c.spawn().unwrap();
    child.stdin.take().unwrap().write_all(script.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn expected_code(stem: &str) -> i32 {
    match stem {
        "err_not_prime" | "err_pole" => 1,
        s if s.starts_with("err_") => 2,
        _ => 0,
    }
}

fn golden_args(stem: &str) -> Vec<&'static str> {
    if stem == "verify_reciprocity" {
        vec!["--json", "--seed", "7"]
    } else {
        vec!["--json"]
    }
}

fn scripts() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "rg"))
        .collect();
    v.sort();
    assert!(v.len() >= 15);
    v
}

#[test]
fn golden_reports_and_exit_codes() {
    for script in scripts() {
        let stem = script.file_stem().unwrap().to_str().unwrap().to_string();
        let out = bin().arg(&script).args(golden_args(&stem)).output().unwrap();
        let want = std::fs::read_to_string(script.with_extension("json")).unwrap();
        assert_eq!(String::from_utf8_lossy(&out.stdout), want, "{stem}");
        assert_eq!(out.status.code(), Some(expected_code(&stem)), "{stem}");
    }
}

#[test]
fn documented_examples() {
    let out = stdin_run("curve C = P1 over GF(3); modulus m = 2*[x]; divisor D = 2*[inf]; rrm C D m", &["--json"], &[]);
    let r = &json_of(&out)["result"];
    assert_eq!(r["l_m"], 2);
    assert_eq!(r["i_m"], 0);
    assert_eq!(r["basis"], serde_json::json!(["1", "x^2"]));

    let out = stdin_run("curve C = P1 over GF(3); modulus m = 2*[x]; classgroup C m", &["--json"], &[]);
    assert_eq!(json_of(&out)["result"]["invariants"], serde_json::json!([3]));

    let out = stdin_run("curve C = P1 over GF(3); modulus m = 0*[x]; classgroup C m", &["--json"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let e = &json_of(&out)["error"];
    assert_eq!(e["kind"], "IllFormedDivisor");
    assert_eq!((e["line"].as_u64(), e["column"].as_u64()), (Some(1), Some(38)));

    let out = stdin_run("verify reciprocity", &["--json", "--seed", "7"], &[]);
    let r = &json_of(&out)["result"];
    assert_eq!(r["status"], "pass");
    assert_eq!(r["cases"], 200);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn function_declarations_are_reduced() {
    let s = parse_script("curve C = P1 over GF(3)\nfn f = (x^2+1)/(x-1)\nfn h = (x^2-1)/(x-1)\nverify rr").unwrap();
    let session = elaborate(&s).unwrap();
    let Some(Decl::Function(f)) = session.get("f") else { panic!() };
    assert_eq!(f.to_string(), "(x^2+1)/(x+2)");
    let Some(Decl::Function(h)) = session.get("h") else { panic!() };
    assert_eq!(h.to_string(), "x+1");
}

#[test]
fn corrupted_tame_sign_is_reported() {
    let out = stdin_run("verify symbols", &["--json"], &[("RAYGROUP_FAULT", "tame-sign")]);
    assert_eq!(out.status.code(), Some(1));
    let r = &json_of(&out)["result"];
    assert_eq!(r["status"], "fail");
    let cx = r["counterexample"].as_str().unwrap();
    assert!(cx.starts_with("f=x, g=x, P=[x]"), "{cx}");
}

#[test]
fn rr_suite_covers_enough_pairs() {
    let out = stdin_run("verify rr", &["--json"], &[]);
    let r = &json_of(&out)["result"];
    assert_eq!(r["status"], "pass");
    assert!(r["cases"].as_u64().unwrap() >= 400);
}

#[test]
fn output_is_byte_stable() {
    let script = golden_dir().join("reciprocity_gf4.rg");
    let a = bin().arg(&script).arg("--json").output().unwrap();
    let b = bin().arg(&script).arg("--json").env("RAYGROUP_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let a = stdin_run("verify classgroup", &["--json", "--seed", "3"], &[]);
    let b = stdin_run("verify classgroup", &["--json", "--seed", "3"], &[("RAYGROUP_THREADS", "1")]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn stdin_matches_file_input() {
    let script = golden_dir().join("map_p1.rg");
    let text = std::fs::read_to_string(&script).unwrap();
    let from_file = bin().arg(&script).output().unwrap();
    let from_stdin = stdin_run(&text, &[], &[]);
    assert_eq!(from_file.stdout, from_stdin.stdout);
    assert_eq!(String::from_utf8_lossy(&from_stdin.stdout).lines().next(), Some("source_invariants: [6]"));
}

#[test]
fn text_mode_errors_go_to_stderr() {
    let out = stdin_run("curve C = P1 over GF(3)\nrr C D", &[], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(String::from_utf8_lossy(&out.stderr), "error: UnknownName at line 2, column 6: unknown name D\n");
}

#[test]
fn unreadable_input_and_bad_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().arg(dir.path().join("missing.rg")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["-", "--size", "huge"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn canonical_print_runs_identically() {
    let opts = Options::default();
    for script in scripts() {
        let text = std::fs::read_to_string(&script).unwrap();
        let Ok(parsed) = parse_script(&text) else { continue };
        let printed = parsed.to_string();
        assert_eq!(parse_script(&printed).unwrap(), parsed, "{}", script.display());
        if script.file_stem().unwrap().to_str().unwrap().starts_with("verify") {
            continue;
        }
        let a = execute(&text, &opts);
        let b = execute(&printed, &opts);
        assert_eq!(a.code, b.code);
        assert_eq!(a.report.get("result"), b.report.get("result"), "{}", script.display());
    }
}

#[test]
fn golden_reports_follow_the_schema_keys() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(root).unwrap()).unwrap();
    let top: Vec<&String> = schema["properties"].as_object().unwrap().keys().collect();
    for script in scripts() {
        let report: Value = serde_json::from_str(&std::fs::read_to_string(script.with_extension("json")).unwrap()).unwrap();
        let obj = report.as_object().unwrap();
        assert!(obj.keys().all(|k| top.contains(&k)), "{}", script.display());
        let Some(result) = obj.get("result") else { continue };
        let keys: Vec<&String> = result.as_object().unwrap().keys().collect();
        let fits = schema["$defs"].as_object().unwrap().values().filter(|d| d.get("required").is_some()).any(|d| {
            let props = d["properties"].as_object().unwrap();
            let required = d["required"].as_array().unwrap();
            keys.iter().all(|k| props.contains_key(*k)) && required.iter().all(|r| keys.iter().any(|k| *k == r))
        });
        assert!(fits, "{}", script.display());
    }
}
