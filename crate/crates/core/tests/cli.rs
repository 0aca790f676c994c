use std::path::{Path, PathBuf};

use subshift_k::cli::{run, Outcome};
use subshift_k::shift::io::load_presentation;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn go(args: &[&str]) -> Outcome {
    run(std::iter::once("subshift-k").chain(args.iter().copied()).chain(["--no-cache"]))
}

const FULL2: &str = r#"{"type":"sft","alphabet":["0","1"],"forbidden":[]}"#;
const FULL3: &str = r#"{"type":"sft","alphabet":["0","1","2"],"forbidden":[]}"#;
const GOLDEN: &str = r#"{"type":"sft","alphabet":["0","1"],"forbidden":[["1","1"]]}"#;
const TWO_POINTS: &str = r#"{"type":"finite","alphabet":["0","1"],"points":[{"pre":["1"],"per":["0"]}]}"#;

#[test]
fn classes_show_the_m_sequence_and_index_sets() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = write(dir.path(), "f2.json", FULL2);
    let out = go(&["classes", f2.to_str().unwrap(), "--lmax", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["m"], serde_json::json!([1, 1, 1, 1, 1]));

    let g = write(dir.path(), "g.json", GOLDEN);
    let out = go(&["classes", g.to_str().unwrap(), "--lmax", "4"]);
    assert!(out.stdout.contains("m(l), l=0..    1 2 2 2 2"));
    assert!(out.stdout.contains("stable at level 1"));

    let two = write(dir.path(), "two.json", TWO_POINTS);
    let out = go(&["classes", two.to_str().unwrap(), "--lmax", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["levels"][1]["m_sets"], serde_json::json!([[0, 1], [0]]));
}

#[test]
fn transforms_write_presentations() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = write(dir.path(), "f2.json", FULL2);
    let out_path = dir.path().join("exp.json");
    let out = go(&[
        "transform", f2.to_str().unwrap(), "--move", r#"{"move":"expand","a0":"0","star":"*"}"#,
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(load_presentation(&out_path).unwrap().alphabet().len(), 3);

    let g = write(dir.path(), "g.json", GOLDEN);
    let mv = write(dir.path(), "move.json", r#"{"move":"higher_block","n":2}"#);
    let hb = dir.path().join("g2.json");
    let out = go(&["transform", g.to_str().unwrap(), "--move", &format!("@{}", mv.display()), "--out", hb.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let text = std::fs::read_to_string(&hb).unwrap();
    assert!(text.starts_with(r#"{"type":"sft","alphabet":["00","01","10"]"#), "{text}");

    let two = write(dir.path(), "two.json", TWO_POINTS);
    let out = go(&[
        "transform", two.to_str().unwrap(), "--move",
        r#"{"move":"split","f":{"0":["b0","c0"],"1":["b1","c1"]}}"#, "--out", dir.path().join("s.json").to_str().unwrap(),
    ]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("preimage"), "{}", out.stderr);
}

#[test]
fn compare_workflows() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", GOLDEN);
    let g2 = dir.path().join("g2.json");
    go(&["transform", g.to_str().unwrap(), "--move", r#"{"move":"higher_block","n":2}"#, "--out", g2.to_str().unwrap()]);
    assert_eq!(go(&["compare", g.to_str().unwrap(), g2.to_str().unwrap()]).code, 0);

    let f3 = write(dir.path(), "f3.json", FULL3);
    let e3 = dir.path().join("e3.json");
    go(&["transform", f3.to_str().unwrap(), "--move", r#"{"move":"expand","a0":"0","star":"*"}"#, "--out", e3.to_str().unwrap()]);
    let out = go(&["compare", f3.to_str().unwrap(), e3.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["a"]["k0_canonical"], "Z/2");
    assert_eq!(v["b"]["k0_canonical"], "Z/2");
    assert!([0, 1, 2].contains(&out.code));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", GOLDEN);
    for cmd in ["invariants", "classes", "matrices", "kgroups", "triple"] {
        for format in ["table", "json"] {
            let a = go(&[cmd, g.to_str().unwrap(), "--format", format]);
            let b = go(&[cmd, g.to_str().unwrap(), "--format", format]);
            assert_eq!(a.code, 0, "{cmd}: {}", a.stderr);
            assert_eq!(a, b, "{cmd} {format}");
        }
    }
}

#[test]
fn model_verify_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    let two = write(dir.path(), "two.json", TWO_POINTS);
    let out = go(&["model", "verify", two.to_str().unwrap(), "--L", "2", "--format", "json"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["basis"], serde_json::json!(["(0)^inf", "1(0)^inf"]));
}
