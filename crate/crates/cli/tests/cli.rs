use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use quadcong::catalog::instantiate;
use quadcong::Matrix;
use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_quadcong"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn temp_file(name: &str, v: &Value) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quadcong-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn iso_json(m: &Matrix) -> Value {
    json!({ "dim": m.rows(), "matrix": m })
}

#[test]
fn classify_catalog_entry() {
    let phi = instantiate("2.4a", &HashMap::new()).unwrap();
    let o = run(&["classify"], &iso_json(phi.matrix()).to_string());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["case"], "2.4");
}

#[test]
fn equiv_of_congruent_pair() {
    let phi = Matrix::from_ints(&[&[1, 2, 0, 0], &[0, 1, 3, 0], &[0, 0, 1, 1], &[1, 0, 0, 2]]);
    let g = Matrix::from_ints(&[&[1, 1, 0, 0], &[0, 1, 0, 2], &[0, 0, 1, 0], &[3, 0, 0, 1]]);
    let moved = g
        .transpose()
        .checked_mul(&phi)
        .unwrap()
        .checked_mul(&g)
        .unwrap();
    let a = temp_file("a.json", &iso_json(&phi));
    let b = temp_file("b.json", &iso_json(&moved));
    let o = run(
        &[
            "equiv",
            "--a",
            a.to_str().unwrap(),
            "--b",
            b.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o), json!({ "equivalent": true }));
}

#[test]
fn congruence_verbs() {
    let input =
        json!({"n": 3, "type": "1", "params": {"a": "1", "b": "2", "d": "3", "e": "-1", "f": "1"}})
            .to_string();
    let o = run(&["cong-verify"], &input);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["all_pass"], true);
    let o = run(&["cong-translate"], &input);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["on_image_quadric"], true);
    assert_eq!(v["equivariant"], true);
    assert!(run(&["cong-build"], &input).status.success());
    assert!(run(&["cong-degenerate"], &input).status.success());
}

#[test]
fn failed_axioms_exit_one() {
    // valid input, but these forms do not vanish at the base point
    let input = json!({"n": 3, "type": "custom", "basis": ["X^2", "Y^2", "Z^2", "X*Y"], "phi_inv": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]});
    let o = run(&["cong-verify"], &input.to_string());
    assert_eq!(
        o.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn malformed_json_reports_position() {
    let o = run(&["classify"], "{\n  \"dim\": 4,\n  \"matrix\": [[1, 2\n");
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn unknown_verb_is_rejected() {
    let o = run(&["frobnicate"], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn catalog_and_gallery() {
    let o = run(&["catalog-list"], "");
    assert_eq!(stdout_json(&o).as_array().unwrap().len(), 33);
    let o = run(
        &["catalog-check", "1.1a", "--lambda", "1/3", "--mu", "5"],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["classified"]["case"], "1.1");
    let o = run(&["catalog-check", "1.1a", "--lambda", "2", "--mu", "2"], "");
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["gallery-check", "exemple3", "--params", "a=2,b=3"], "");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn sections_verbs() {
    let o = run(&["quadric-normalize", "--alpha", "1,2,-1,3,2"], "");
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(stdout_json(&o)["verified"], true);
    let o = run(
        &[
            "rmap",
            "--type",
            "linear",
            "--params",
            "nu=1,alpha0=1,alpha1=0,w=2",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["extraneous_matches"], true);
    let o = run(
        &[
            "rmap",
            "--type",
            "quadratic",
            "--params",
            "alpha0=1,alpha1=0,beta0=2,beta1=-3",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["rmap", "--type", "7"], "").status.code(), Some(2));
}

#[test]
fn selftest_is_deterministic() {
    let a = run(&["selftest", "--seed", "5"], "");
    assert_eq!(a.status.code(), Some(0));
    let b = run(&["selftest", "--seed", "5"], "");
    assert_eq!(a.stdout, b.stdout);
}
