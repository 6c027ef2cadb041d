use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use clap::Parser;
use formconf::cli::{run, Cli};
use serde_json::Value;
use tempfile::TempDir;

fn formconf(args: &[&str]) -> (i32, String, String) {
    let cli = Cli::try_parse_from(std::iter::once("formconf").chain(args.iter().copied())).expect("arguments parse");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(cli, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn fixtures(dir: &TempDir) -> PathBuf {
    let path = dir.path().join("fx");
    let (code, _, _) = formconf(&["fixtures", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

/// FIX-W with the two edges at vertex 4 raised by 1/100.
fn perturbed_wedge(fx: &Path, dir: &Path) -> PathBuf {
    let mut doc = read_json(&fx.join("fix-w.json"));
    for ev in doc["form"].as_array_mut().unwrap() {
        let e = (ev["edge"][0].as_u64().unwrap(), ev["edge"][1].as_u64().unwrap());
        match e {
            (3, 4) => ev["value"] = "27/200".into(),
            (0, 4) => ev["value"] = "26/100".into(),
            _ => {}
        }
    }
    let path = dir.join("fix-w-moved.json");
    fs::write(&path, doc.to_string()).unwrap();
    path
}

#[test]
fn compute_wedge_writes_the_delta_point() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures(&dir);
    let out = dir.path().join("out");
    let (code, _, err) = formconf(&[
        "compute",
        s(&fx.join("fix-w.json")),
        "--out",
        s(&out),
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0, "{err}");
    let doc = read_json(&out.join("delta_r1_standard.json"));
    assert_eq!(doc["points1d"], serde_json::json!([["-1/4", 1]]));
    assert!(out.join("delta_r1_standard.csv").exists());
    assert!(!fs::read_dir(&out)
        .unwrap()
        .any(|e| e.unwrap().path().extension().is_some_and(|x| x == "tmp")));
}

#[test]
fn compute_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures(&dir);
    let a = formconf(&["compute", s(&fx.join("fix-t.json"))]).1;
    let b = formconf(&["compute", s(&fx.join("fix-t.json"))]).1;
    assert_eq!(a, b);
}

#[test]
fn empty_complex_is_rejected() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("empty.json");
    fs::write(
        &path,
        r#"{"field":"fp","p":2,"complex":{"vertices":[],"simplices":{}},"form":[]}"#,
    )
    .unwrap();
    let (code, _, err) = formconf(&["compute", s(&path)]);
    assert_eq!(code, 2);
    assert!(err.contains("no vertices"), "{err}");
}

#[test]
fn non_cocycle_is_rejected() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures(&dir);
    let mut doc = read_json(&fx.join("fix-g.json"));
    doc["form"][0]["value"] = "7/5".into();
    let path = dir.path().join("bad.json");
    fs::write(&path, doc.to_string()).unwrap();
    assert_eq!(formconf(&["compute", s(&path)]).0, 2);
}

#[test]
fn contractible_complex_has_empty_configurations() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures(&dir);
    let (code, out, _) = formconf(&["compute", s(&fx.join("fix-c.json"))]);
    assert_eq!(code, 0);
    let docs: Value = serde_json::from_str(&out).unwrap();
    for d in docs.as_array().unwrap() {
        assert_eq!(d["total"], 0);
        assert_eq!(d["points1d"], serde_json::json!([]));
    }
}

#[test]
fn small_window_cap_is_rejected_for_periodic_forms() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures(&dir);
    assert_eq!(
        formconf(&["compute", s(&fx.join("fix-w.json")), "--max-sheets", "3"]).0,
        2
    );
}

#[test]
fn torus_duality_passes() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures(&dir);
    let out = dir.path().join("out");
    let (code, _, err) = formconf(&["verify", "duality", s(&fx.join("fix-t2.json")), "--out", s(&out)]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(read_json(&out.join("duality.json"))["passed"], true);
}

#[test]
fn wedge_duality_is_not_a_manifold() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures(&dir);
    let (code, _, err) = formconf(&["verify", "duality", s(&fx.join("fix-w.json"))]);
    assert_eq!(code, 2);
    assert!(err.contains("not a closed manifold"), "{err}");
}

#[test]
fn wedge_stability_with_a_small_move() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures(&dir);
    let p = dir.path().join("move.json");
    fs::write(&p, r#"[{"edge":[3,4],"value":"1/100"},{"edge":[0,4],"value":"1/100"}]"#).unwrap();
    let (code, out, err) = formconf(&[
        "verify",
        "stability",
        s(&fx.join("fix-w.json")),
        "--degrees",
        "1",
        "--perturbation",
        s(&p),
    ]);
    assert_eq!(code, 0, "{err}");
    let rep: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rep["reports"][0]["perturbed"], serde_json::json!([["-13/50", 1]]));
}

#[test]
fn random_stability_trials_are_seeded() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures(&dir);
    let input = fx.join("fix-g.json");
    let args = ["verify", "stability", s(&input), "--trials", "3", "--seed", "5"];
    let (code, a, _) = formconf(&args);
    assert_eq!(code, 0);
    assert_eq!(a, formconf(&args).1);
}

#[test]
fn remaining_checks_pass_on_the_wedge() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures(&dir);
    for check in ["theta", "dimension", "window", "subsurjection", "boxes"] {
        let (code, _, err) = formconf(&["verify", check, s(&fx.join("fix-w.json"))]);
        assert_eq!(code, 0, "{check}: {err}");
    }
    assert_eq!(formconf(&["verify", "oracle", s(&fx.join("fix-g.json"))]).0, 0);
    assert_eq!(formconf(&["verify", "oracle", s(&fx.join("fix-w.json"))]).0, 2);
}

#[test]
fn diff_identical_and_mismatched() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures(&dir);
    let out = dir.path().join("out");
    formconf(&["compute", s(&fx.join("fix-w.json")), "--out", s(&out)]);
    let delta = out.join("delta_r1_standard.json");
    let gamma = out.join("gamma_r1_standard.json");
    let (code, text, _) = formconf(&["diff", s(&delta), s(&delta)]);
    assert_eq!((code, text.as_str()), (0, ""));
    assert_eq!(formconf(&["diff", s(&delta), s(&gamma)]).0, 2);
}

#[test]
fn diff_reports_the_moved_point() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures(&dir);
    let moved = perturbed_wedge(&fx, dir.path());
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_eq!(formconf(&["compute", s(&fx.join("fix-w.json")), "--out", s(&a)]).0, 0);
    assert_eq!(formconf(&["compute", s(&moved), "--out", s(&b)]).0, 0);
    let name = "delta_r1_standard.json";
    let (code, text, _) = formconf(&["diff", s(&a.join(name)), s(&b.join(name))]);
    assert_eq!(code, 1);
    assert_eq!(text, "< -1/4 x1\n> -13/50 x1\n");
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures(&dir);
    let bin = env!("CARGO_BIN_EXE_formconf");
    let ok = Command::new(bin)
        .args(["verify", "duality", s(&fx.join("s2.json"))])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin)
        .args(["verify", "duality", s(&fx.join("fix-w.json"))])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
