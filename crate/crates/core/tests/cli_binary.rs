use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cmbkf"));
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped()).stdin(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json_of(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

const SQRT5: &str = r#"{"field":{"p":5,"f":1,"eisenstein":[-5,0,1]},"phi":[1,0]}"#;

#[test]
fn realize_succeeds_with_schema() {
    let (code, out) = run(&["realize", SQRT5], None);
    assert_eq!(code, 0);
    let v = json_of(&out);
    assert_eq!(v["schema"], "cm-bkf/1");
    assert_eq!(v["command"], "realize");
    assert_eq!(v["result"]["etale_rank"], 2);
    assert_eq!(v["result"]["hodge_tate"], json!({"0": 1, "1": 1}));
    assert_eq!(v["result"]["newton_slopes"], json!([[1, 2, 2]]));
    assert_eq!(v["result"]["reflex_degree"], 2);
}

#[test]
fn stdin_and_inline_agree() {
    let (c1, a) = run(&["realize", SQRT5], None);
    let (c2, b) = run(&["realize"], Some(SQRT5));
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn output_is_deterministic() {
    let input = r#"{"field":{"p":3,"f":1,"eisenstein":[-3,0,0,1]},"phi":[2,0,-1]}"#;
    for cmd in ["reflex", "realize", "classify"] {
        let (c1, a) = run(&[cmd, input], None);
        let (c2, b) = run(&[cmd, input], None);
        assert_eq!((c1, c2), (0, 0), "{cmd}");
        assert_eq!(a, b, "{cmd}");
    }
}

#[test]
fn malformed_input_exits_2() {
    let (code, out) = run(&["realize", "{not json"], None);
    assert_eq!(code, 2);
    let v = json_of(&out);
    assert_eq!(v["schema"], "cm-bkf/1");
    assert_eq!(v["error"]["limit"], false);
    let (code, _) = run(&["reflex", r#"{"field":{"p":5,"f":1,"eisenstein":[-5,0,1]},"phi":[1]}"#], None);
    assert_eq!(code, 2);
}

#[test]
fn limits_exit_3() {
    let (code, out) = run(&["realize", "--degree-bound", "1", SQRT5], None);
    assert_eq!(code, 3);
    assert_eq!(json_of(&out)["error"]["kind"], "DegreeBoundExceeded");
    let (code, out) = run(&["galois", r#"{"p":2,"f":1,"eisenstein":[-2,0,0,0,1]}"#], None);
    assert_eq!(code, 3);
    assert_eq!(json_of(&out)["error"]["kind"], "UnsupportedExtension");
}

#[test]
fn every_command_round_trips() {
    let field = json!({"p": 5, "f": 1, "eisenstein": [-5, 0, 1]});
    let ty = json!({"field": field, "phi": [1, -1]});
    let cases = [
        ("reflex", ty.clone()),
        ("classify", json!({"field": field, "range": [0, 1]})),
        ("realize", json!([ty, {"field": "Qp", "phi": [2]}])),
        ("hom", json!([{"field": "Qp", "phi": [1]}, {"field": "Qp", "phi": [1]}])),
        ("tensor", json!({"left": ty, "right": {"field": "Qp", "phi": [1]}})),
        ("dual", ty.clone()),
        ("newton", json!({"p": 5, "coeffs": [5, -6, 1]})),
        ("snf", json!({"matrix": [[[0, 1], [1]], [[0], [0, 0, 1]]], "precision": 6})),
        ("galois", field.clone()),
    ];
    for (cmd, input) in cases {
        let (code, out) = run(&[cmd, &input.to_string()], None);
        assert_eq!(code, 0, "{cmd}: {out}");
        let v = json_of(&out);
        assert_eq!(v["schema"], "cm-bkf/1");
        assert_eq!(v["command"], cmd);
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(again, v);
    }
}

#[test]
fn text_format_is_plain() {
    let (code, out) = run(&["realize", "--format", "text", SQRT5], None);
    assert_eq!(code, 0);
    assert!(serde_json::from_str::<Value>(&out).is_err());
    assert!(out.contains("etale_rank"));
}
