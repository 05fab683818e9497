use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn trig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trig")).args(args).output().unwrap()
}

fn json_out(args: &[&str]) -> Value {
    let out = trig(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn picard_table() {
    let v = json_out(&["chow", "picard", "--from", "2", "--to", "12"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    let last = &rows[10];
    assert_eq!(last["g"], 12);
    assert_eq!(last["group"], "ℤ⊕ℤ/9");
    assert_eq!(rows[0]["group"], "ℤ");

    let csv = trig(&["chow", "picard", "--from", "2", "--to", "3", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "g,a,b,group\n2,-8,17,ℤ\n3,-9,9,ℤ⊕ℤ/9\n");
}

#[test]
fn class_w_and_class_y() {
    let w = json_out(&["chow", "class-w"]);
    assert_eq!(w["class"], "2*nu1*c1 + 4*c1^2 - 9*c2");
    let y = json_out(&["chow", "class-y", "--genus", "3"]);
    assert_eq!(y["kernel_coords"], serde_json::json!(["-9", "9"]));
    assert_eq!(y["restriction_check"]["in_kernel"], true);
    let s = json_out(&["chow", "class-y", "--symbolic"]);
    assert_eq!(s["gamma1"], "g+15");
    assert_eq!(s["delta1"], "-g-6");
}

#[test]
fn nodal_fiber_is_in_w() {
    let v = json_out(&["cover", "singular", "--f", "x1^2*x2", "--g", "0"]);
    assert_eq!(v, serde_json::json!({ "in_W": true, "witness": "(0:1)" }));
    let v = json_out(&["cover", "singular", "--f", "x1^3 - x2^3", "--g", "x1*x2^2", "--field", "p=101"]);
    assert_eq!(v["in_W"], false);
}

#[test]
fn euler_matrix_splits_evenly() {
    let p = fixture(
        "euler2.json",
        r#"{"r": 2, "d": 2, "entries": [[["1","0"],["0","0"]], [["0","1"],["0","0"]], [["0","0"],["1","0"]], [["0","0"],["0","1"]]]}"#,
    );
    let v = json_out(&["bundle", "split", "--input", p.to_str().unwrap()]);
    assert_eq!(v, serde_json::json!({ "splitting": [1, 1] }));
    let v = json_out(&["bundle", "degeneracy", "--input", p.to_str().unwrap(), "--field", "p=101"]);
    assert_eq!(v["nondegenerate"], true);
}

#[test]
fn datum_with_one_node() {
    let p = fixture("node.json", r#"{"m": 2, "n": 2, "phi": ["t1^2", "t0^2", "0", "-t1^2"]}"#);
    let v = json_out(&["cover", "smooth", "--input", p.to_str().unwrap()]);
    assert_eq!(v["smooth"], false);
    assert_eq!(v["singular_points"], serde_json::json!([{ "base": "(1:0)", "fiber": "(0:1)" }]));
}

#[test]
fn cubic_algebra_constants() {
    let v = json_out(&["cover", "build", "--cubic", "x1^2*x2 - x1*x2^2"]);
    assert_eq!(v["fiber_type"], "etale");
    assert_eq!(v["discriminant"], "1");
}

#[test]
fn probe_is_deterministic() {
    let args = ["bundle", "probe", "--r", "2", "--d", "4", "--p", "101", "--trials", "500", "--seed", "7"];
    let a = trig(&args);
    let b = trig(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["trials"], 500);
    let ex = json_out(&["bundle", "probe", "--r", "1", "--d", "1", "--p", "5", "--exhaustive"]);
    assert_eq!(ex["degenerate"], 145);
}

#[test]
fn errors_are_structured() {
    let out = trig(&["cover", "singular", "--f", "x1^2*x2 +", "--g", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["error"], "parse");
    assert_eq!(e["offset"], 9);

    let out = trig(&["chow", "picard", "--from", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["error"], "usage");

    let out = trig(&["cover", "singular", "--f", "x1^3", "--g", "0", "--field", "p=3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = trig(&["bundle", "split", "--input", "/definitely/missing.json"]);
    assert_eq!(out.status.code(), Some(1));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["error"], "io");

    let out = trig(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_subset() {
    let out = trig(&["verify", "--only", "picard,class-w", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.starts_with("[PASS]")));
    let out = trig(&["verify", "--only", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}
