//! End-to-end runs of the `lenum` binary.

use std::io::Write as _;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

const BN0: &str = "(x^2-z^2+y^2)*(x-z)";

fn lenum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lenum")).args(args).env_remove("LENUM_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn schema() -> JSONSchema {
    let schema: Value = serde_json::from_str(lenum::report::SCHEMA).unwrap();
    JSONSchema::compile(&schema).expect("schema compiles")
}

fn assert_valid(v: &Value) {
    let s = schema();
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("schema violations: {msgs:?}\n{v}");
}

#[test]
fn compute_le_in_the_identity_frame() {
    let o = lenum(&["compute", "le", "-f", BN0, "--vars", "x,y,z", "--frame", "identity", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_valid(&v);
    assert_eq!(v["le"]["lambda"], serde_json::json!([2, 3]));
    assert_eq!(v["le"]["s"], 1);

    let text = lenum(&["compute", "le", "-f", BN0, "--vars", "x,y,z", "--frame", "identity"]);
    let t = stdout(&text);
    assert!(t.contains("lambda^1 = 3") && t.contains("lambda^0 = 2"), "{t}");
}

#[test]
fn compute_milnor_and_sectional() {
    let o = lenum(&["compute", "milnor", "-f", "x^2+y^2", "--vars", "x,y", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_valid(&v);
    assert_eq!(v["values"]["milnor"], 1);

    let o = lenum(&["compute", "sectional", "-f", "y^3-x^4-t^2*x^2", "--vars", "t,x,y", "-k", "2", "--seed", "7", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_valid(&v);
    assert_eq!(v["values"]["mu"], 6);
}

#[test]
fn check_reports_validate() {
    let cases: [&[&str]; 4] = [
        &["check", "funbound", "-f", BN0, "--vars", "x,y,z", "--frame", "identity", "--json"],
        &["check", "mainone", "-f", "y^3-x^4-t^2*x^2", "--vars", "t,x,y", "--json"],
        &["check", "leiom", "-f", BN0, "--vars", "x,y,z", "--frame", "identity", "-m", "9", "-a", "1", "--json"],
        &["check", "newmpr", "-f", BN0, "--vars", "x,y,z", "--frame", "identity", "--component", "y,3*z+x", "--json"],
    ];
    for args in cases {
        let o = lenum(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v = json(&o);
        assert_valid(&v);
        assert_eq!(v["status"], "holds");
    }
    let v = json(&lenum(cases[0]));
    assert_eq!(v["checks"][0]["lhs"], "8");
    assert_eq!(v["checks"][0]["equality"], true);
    let v = json(&lenum(cases[1]));
    assert_eq!(v["checks"][0]["lhs"], "11/3");
    assert_eq!(v["checks"][0]["rhs"], "3");
}

#[test]
fn exit_codes() {
    let skipped = lenum(&["check", "dagger", "-f", "y^2+z^2", "--vars", "x,y,z"]);
    assert_eq!(skipped.status.code(), Some(2));

    let unknown = lenum(&["check", "nonsense", "-f", BN0, "--vars", "x,y,z"]);
    assert_eq!(unknown.status.code(), Some(1));

    let bad = lenum(&["compute", "le", "-f", "x^2 + + ", "--vars", "x,y"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());

    let not_at_origin = lenum(&["compute", "milnor", "-f", "x^2 + 1", "--vars", "x"]);
    assert_eq!(not_at_origin.status.code(), Some(1));

    let teissier_on_non_isolated = lenum(&["check", "teissier", "-f", BN0, "--vars", "x,y,z"]);
    assert_eq!(teissier_on_non_isolated.status.code(), Some(2));
}

#[test]
fn runs_are_byte_identical() {
    let args = ["check", "mainmany", "-f", BN0, "--vars", "x,y,z", "--seed", "5", "--json"];
    let a = lenum(&args);
    let b = lenum(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_valid(&json(&a));
}

#[test]
fn seed_from_environment_and_flag() {
    let base = ["compute", "le", "-f", BN0, "--vars", "x,y,z", "--json"];
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_lenum"));
        c.args(base).args(extra).env_remove("LENUM_SEED");
        if let Some(s) = env {
            c.env("LENUM_SEED", s);
        }
        json(&c.output().unwrap())
    };
    let from_env = run(Some("17"), &[]);
    let from_flag = run(None, &["--seed", "17"]);
    assert_eq!(from_env, from_flag);
    let overridden = run(Some("17"), &["--seed", "3"]);
    assert_eq!(overridden, run(None, &["--seed", "3"]));
    assert_ne!(overridden["frame"], from_env["frame"]);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = lenum(&["check", "funbound", "-f", BN0, "--vars", "x,y,z", "--frame", "identity", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, json(&o));
}

#[test]
fn frame_from_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, r#"{{"matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}}"#).unwrap();
    let o = lenum(&["compute", "le", "-f", BN0, "--vars", "x,y,z", "--frame", file.path().to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["le"]["lambda"], serde_json::json!([2, 3]));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "[[1, 0], [0, 1]]").unwrap();
    let o = lenum(&["compute", "le", "-f", BN0, "--vars", "x,y,z", "--frame", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn search_empty_family() {
    let file = tempfile::NamedTempFile::new().unwrap();
    let o = lenum(&["search", "dagger", "--family", file.path().to_str().unwrap(), "--vars", "t,x,y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 members, 0 evaluated, 0 counterexamples"), "{}", stdout(&o));
    let o = lenum(&["search", "dagger", "--family", file.path().to_str().unwrap(), "--vars", "t,x,y", "--json"]);
    assert!(stdout(&o).is_empty());
}

#[test]
fn search_homogeneous_members() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, r#"{{"template": "(x^2-z^2+y^2)*(x-z)", "vars": ["x", "y", "z"]}}"#).unwrap();
    writeln!(file, r#"{{"template": "x^a*y^2 + z^(a+2)", "params": {{"a": [1, 2]}}}}"#).unwrap();
    let o = lenum(&["search", "dagger", "--family", file.path().to_str().unwrap(), "--vars", "x,y,z", "--seed", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    for v in &lines {
        assert_valid(v);
        assert_ne!(v["status"], "counterexample");
    }
}

#[test]
fn search_rejects_bad_family_lines() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, r#"{{"template": "x", "bogus": 1}}"#).unwrap();
    let o = lenum(&["search", "dagger", "--family", file.path().to_str().unwrap(), "--vars", "x,y"]);
    assert_eq!(o.status.code(), Some(1));
}
