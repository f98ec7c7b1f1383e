use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_linkring")).args(args).output().unwrap();
    parse(out)
}

fn run_stdin(args: &[&str], input: &str) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_linkring"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    parse(child.wait_with_output().unwrap())
}

fn parse(out: Output) -> (i32, Value) {
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

#[test]
fn primitive_two_block_and_verify() {
    let (code, v) = run(&["primitive", "--bound", "2", &data("two-block.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["primitive"], json!(true));
    let module: Value = serde_json::from_str(&std::fs::read_to_string(data("two-block.json")).unwrap()).unwrap();
    let doc = json!({ "module": module, "certificate": v["certificate"] });
    let (code, v) = run_stdin(&["verify-certificate", "-"], &doc.to_string());
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["valid"], json!(true));
    assert_eq!(v["split_checked"], json!(true));
}

#[test]
fn tampered_certificate_is_rejected() {
    let (_, v) = run(&["primitive", "--bound", "2", &data("two-block.json")]);
    let module: Value = serde_json::from_str(&std::fs::read_to_string(data("two-block.json")).unwrap()).unwrap();
    let mut cert = v["certificate"].clone();
    cert["inverse"]["entries"][0][0] = json!([{ "word": "", "coeff": "2" }]);
    let doc = json!({ "module": module, "certificate": cert });
    let (code, v) = run_stdin(&["verify-certificate", "-"], &doc.to_string());
    assert_eq!(code, 1);
    assert_eq!(v["error"], json!("CertificateCheckFailed"));
}

#[test]
fn trefoil() {
    let (code, v) = run(&["alexander", &data("trefoil.json")]);
    assert_eq!((code, v), (0, json!({ "alexander": "z^2 - z + 1" })));
    let (code, v) = run(&["primitive", "--bound", "3", &data("trefoil.json")]);
    assert_eq!(code, 1);
    assert_eq!(v, json!({ "error": "NotPrimitiveUpTo", "detail": { "bound": 3 } }));
    let (code, v) = run(&["split", &data("trefoil.json")]);
    assert_eq!((code, &v["error"]), (1, &json!("NotNearProjection")));
}

#[test]
fn flk_and_invariants() {
    let (code, v) = run(&["check-flk", &data("standard-row.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], json!("NotFlk"));
    assert_eq!(v["detail"]["rank"], json!(0));

    let (code, cover) = run(&["cover", &data("two-block.json")]);
    assert_eq!(code, 0);
    let cover = cover.to_string();
    let (code, v) = run_stdin(&["check-flk", "-"], &cover);
    assert_eq!((code, &v["flk"]), (0, &json!(true)));
    let (code, v) = run_stdin(&["abel-det", "-"], &cover);
    assert_eq!((code, v), (0, json!({ "abel_det": "1", "raw": "z1*z2" })));
    let (code, v) = run_stdin(&["linearize", "-"], &cover);
    assert_eq!(code, 0);
    assert_eq!(v["t0"], json!(["", "z1", "z2"]));
    assert_eq!(v["commutes"], json!(true));
    let (code, v) = run_stdin(&["transversalize", "-"], &cover);
    assert_eq!(code, 0);
    assert_eq!(v["module"]["dims"], json!([4, 4]));
    let (code, v) = run_stdin(&["invert", "--support-bound", "2", "-"], &cover);
    assert_eq!(code, 0);
    assert_eq!(v["inverse"]["rows"], json!(4));
}

#[test]
fn torsion_chain() {
    let chain = json!({ "modules": [
        { "field": "Q", "mu": 1, "dims": [2], "e": [["0", "-1"], ["1", "1"]] },
        { "field": "Q", "mu": 1, "dims": [1], "e": [["0"]] },
    ]});
    let (code, v) = run_stdin(&["torsion", "-"], &chain.to_string());
    assert_eq!(code, 0);
    assert_eq!(v["torsion"], json!({ "numerator": "z^2 - z + 1", "denominator": "1" }));
}

#[test]
fn series_inverse_over_gf5() {
    let m = json!({ "field": "GF(5)", "mu": 1, "rows": 1, "cols": 1,
        "entries": [[[{ "word": "z1", "coeff": "1" }]]] });
    let (code, v) = run_stdin(&["series-inverse", "--degree", "2", "-"], &m.to_string());
    assert_eq!(code, 0);
    // (1 + x)^{-1} = 1 - x + x^2
    assert_eq!(
        v["inverse"][0][0],
        json!([
            { "monomial": "", "coeff": "1" },
            { "monomial": "x1", "coeff": "4" },
            { "monomial": "x1 x1", "coeff": "1" },
        ])
    );
}

#[test]
fn malformed_input_exits_2() {
    let (code, v) = run_stdin(&["cover", "-"], "{not json");
    assert_eq!((code, &v["error"]), (2, &json!("MalformedInput")));
    let bad_word = json!({ "mu": 1, "rows": 1, "cols": 1, "entries": [[[{ "word": "z2", "coeff": "1" }]]] });
    let (code, _) = run_stdin(&["check-flk", "-"], &bad_word.to_string());
    assert_eq!(code, 2);
    let (code, _) = run(&["cover", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
    let out = Command::new(env!("CARGO_BIN_EXE_linkring")).args(["primitive", "--bound", "x", "f"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_is_seeded() {
    let run_seed = |seed: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_linkring"))
            .args(["selftest", "--cases", "30"])
            .env("LINKRING_SEED", seed)
            .output()
            .unwrap();
        parse(out)
    };
    let (code, a) = run_seed("11");
    assert_eq!(code, 0, "{a}");
    assert_eq!(a["ok"], json!(true));
    assert_eq!(run_seed("11").1, a);
    assert_eq!(run_seed("eleven").0, 2);
}
