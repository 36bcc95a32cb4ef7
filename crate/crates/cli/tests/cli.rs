use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn pltg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pltg")).args(args).output().unwrap();
    let text = |b: Vec<u8>| String::from_utf8(b).unwrap();
    (out.status.code().unwrap(), text(out.stdout), text(out.stderr))
}

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

#[test]
fn fmt_is_idempotent() {
    for name in ["counterexample.tgf", "quantum.tgf", "discrete.tgf"] {
        let (code, once, _) = pltg(&["-f", &path(name), "fmt"]);
        assert_eq!(code, 0);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("once.tgf");
        std::fs::write(&p, &once).unwrap();
        let (_, twice, _) = pltg(&["-f", p.to_str().unwrap(), "fmt"]);
        assert_eq!(once, twice, "{name}");
    }
}

#[test]
fn classify_the_counterexample() {
    let (code, out, _) = pltg(&["-f", &path("counterexample.tgf"), "classify", "F"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("reg") && l.contains("A(0,1/2)")), "{out}");
}

#[test]
fn printed_glue_is_the_same_graph() {
    let file = path("counterexample.tgf");
    let (code, glued, _) = pltg(&["-f", &file, "glue", "U", "--as", "W"]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("w.tgf");
    std::fs::write(&p, glued).unwrap();
    let (code, out, err) = pltg(&["-f", &file, "-f", p.to_str().unwrap(), "iso", "W", "EF"]);
    assert_eq!(code, 0, "{out}{err}");
}

#[test]
fn suspension_of_the_glued_circle() {
    let file = path("quantum.tgf");
    assert_eq!(pltg(&["-f", &file, "iso", "glued3", "suspended3"]).0, 0);
    assert_eq!(pltg(&["-f", &file, "iso", "glued3", "sphere3"]).0, 1);
    let (code, out, _) = pltg(&["-f", &file, "check-theorem", "union=S3"]);
    assert_eq!(code, 0);
    let cert: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(cert["verdict"], "POSITIVE");
    assert_eq!(cert["corners"]["intersection"], "C(S^2_q)");
}

#[test]
fn quantum_output_validates() {
    let (code, ball, _) = pltg(&["quantum", "ball", "3"]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("b.tgf");
    std::fs::write(&p, ball).unwrap();
    let p = p.to_str().unwrap();
    assert_eq!(pltg(&["-f", p, "validate"]).0, 0);
    let (code, svg, _) = pltg(&["-f", p, "render", "B3"]);
    assert_eq!(code, 0);
    assert!(svg.starts_with("<svg"));
}

#[test]
fn discrete_certificates() {
    let file = path("discrete.tgf");
    for name in ["collapse", "union"] {
        let (code, out, _) = pltg(&["-f", &file, "discrete-check", name]);
        assert_eq!(code, 0, "{name}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["certificate"]["verdict"], "POSITIVE");
    }
}

#[test]
fn errors_point_at_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.tgf");
    std::fs::write(&p, "[space X]\nnode a\narc A = a --\n").unwrap();
    let (code, _, err) = pltg(&["-f", p.to_str().unwrap(), "validate"]);
    assert_eq!(code, 2);
    assert!(err.contains("3:"), "{err}");
}
