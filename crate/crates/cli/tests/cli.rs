use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn hyperion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperion"))
        .args(args)
        .env_remove("HYPERION_DEPTH_GUARD")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn ok(args: &[&str]) -> String {
    let o = hyperion(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn repl(input: &str, args: &[&str]) -> Vec<String> {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hyperion"))
        .args(args)
        .arg("repl")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    stdout(&o).lines().map(str::to_string).collect()
}

fn validate(schema: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{schema}.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let v = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{doc} against {schema}: {errors:?}");
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["hyperlog", "--gamma", "w*2", "--beta", "w^2"]), "l[w^2] - 2");
    assert_eq!(ok(&["bracket", "--left", "0", "--right", "1"]), "(+ -)");
    let audit: Value = serde_json::from_str(&ok(&["audit", "--axiom", "FE", "--mu", "2", "--samples", "100", "--json"])).unwrap();
    assert_eq!(audit["failures"], Value::Array(vec![]));
    let lines = repl("diff 3*l[1] + 2\ncmp L[w](x) L[1](x)\nord w + 1 + w\n:quit\n", &[]);
    assert_eq!(lines, ["3*l[0]^-1", "Less", "w*2"]);
}

#[test]
fn exit_codes() {
    assert_eq!(hyperion(&["ord", "w +"]).status.code(), Some(2));
    assert_eq!(hyperion(&["series", "x^^2"]).status.code(), Some(2));
    assert_eq!(hyperion(&["audit", "--axiom", "XYZ"]).status.code(), Some(2));
    assert_eq!(hyperion(&["frobnicate"]).status.code(), Some(2));
    // well formed but outside the domain
    assert_eq!(hyperion(&["seq", "1/3"]).status.code(), Some(1));
    assert_eq!(hyperion(&["chains", "--nu", "w"]).status.code(), Some(1));
    assert_eq!(hyperion(&["conway", "add", "1"]).status.code(), Some(2));
}

#[test]
fn errors_are_json_when_asked() {
    let o = hyperion(&["--json", "seq", "1/3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    validate("error", &v);
    assert_eq!(v["error"]["kind"], "domain");
    let o = hyperion(&["--json", "ord", "w^"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["kind"], "parse");
}

#[test]
fn output_reparses() {
    for (verb, input) in [
        ("ord", "w^2*3 + w + 7 + w^3"),
        ("series", "x^2 - 3*l[1]^(1/2) + 1/3 + l[w]"),
        ("normalize", "E[1](L[1](x) - 1/2)"),
        ("normalize", "L[w](L[1](x))"),
        ("diff", "x^3*l[1]"),
        ("to-series", "(L[1](x) + 1/2)^2"),
    ] {
        let first = ok(&[verb, input]);
        let again = match verb {
            "diff" | "to-series" => ok(&["series", &first]),
            _ => ok(&[verb, &first]),
        };
        assert_eq!(first, again, "{verb} {input}");
    }
    let s = ok(&["conway", "mul", "3/2", "-5/4"]);
    assert_eq!(ok(&["seq", &s]), format!("{s} = -15/8"));
}

#[test]
fn json_matches_schemas() {
    let cases: &[(&str, &[&str])] = &[
        ("ord", &["ord", "w^w + 2"]),
        ("seq", &["seq", "(+ - +)"]),
        ("seq", &["seq", "w"]),
        ("bracket", &["bracket", "--left", "1/2;(+ +)", "--right", "3"]),
        ("conway", &["conway", "neg", "5/8"]),
        ("conway", &["conway", "add", "1/2", "-3"]),
        ("exp-check", &["exp-check", "1", "--depth", "4"]),
        ("exp-check", &["conway", "exp-check", "1/2"]),
        ("series", &["series", "x - l[w^2] + 1"]),
        ("to-series", &["to-series", "(L[1](x) + 3)^3"]),
        ("diff", &["diff", "x^2", "--order", "2"]),
        ("normalize", &["normalize", "L[1](E[1](x))"]),
        ("cmp", &["cmp", "x^2", "E[1](x)"]),
        ("cmp", &["cmp", "x^2", "E[1](x)", "--at", "20"]),
        ("atomic", &["atomic", "--gamma", "w^2", "--beta", "w"]),
        ("hyperlog", &["hyperlog", "--gamma", "w", "--beta", "w"]),
        ("audit", &["audit", "--axiom", "M", "--mu", "1", "--samples", "20"]),
        ("audit", &["audit", "--axiom", "L0", "--samples", "20"]),
        ("chains", &["chains", "--nu", "2", "--point", "x^2", "--point", "L[1](x)"]),
    ];
    for (schema, args) in cases {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let v: Value = serde_json::from_str(&ok(&full)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        validate(schema, &v);
    }
}

#[test]
fn depth_guard_override() {
    let deep = "w^w^w^w";
    assert!(hyperion(&["ord", deep]).status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_hyperion"))
        .args(["ord", deep])
        .env("HYPERION_DEPTH_GUARD", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(hyperion(&["--depth-guard", "2", "ord", deep]).status.code(), Some(2));
    assert_eq!(hyperion(&["--depth-guard", "2", "normalize", "L[w^w^w](x)"]).status.code(), Some(2));
    assert!(hyperion(&["--depth-guard", "2", "ord", "w^2"]).status.success());
}

#[test]
fn repl_recovers_and_honours_json() {
    let lines = repl("ord w +\n:help\nconway add 1/2 1/4\n", &[]);
    assert!(lines[0].starts_with("parse error"), "{lines:?}");
    assert_eq!(lines.last().unwrap(), "(+ - +)");
    let lines = repl("seq 1/3\nseq 1/2\n", &["--json"]);
    let err: Value = serde_json::from_str(&lines[0]).unwrap();
    validate("error", &err);
    let v: Value = serde_json::from_str(&lines[1]).unwrap();
    validate("seq", &v);
}
