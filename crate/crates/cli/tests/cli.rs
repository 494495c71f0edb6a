//! End-to-end checks of the command-line surface and its exit codes.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tiling123"))
}

#[test]
fn generate_label_verify_render_round_trip() {
    let dir = std::env::temp_dir().join("tiling123-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let patch = dir.join("patch.json");
    let labelled = dir.join("labelled.json");
    let svg = dir.join("patch.svg");

    let out = bin()
        .args(["generate", "--tiling", "chair", "--level", "3", "--out"])
        .arg(&patch)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("64 tiles"));

    let out = bin()
        .args(["label", "--rule", "chair_vp2_long_short", "--patch"])
        .arg(&patch)
        .arg("--out")
        .arg(&labelled)
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = bin()
        .args(["verify", "--rule", "chair_vp2_long_short", "--patch"])
        .arg(&patch)
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = bin()
        .args(["render", "--rule", "chair_vp2_long_short", "--patch"])
        .arg(&patch)
        .arg("--out")
        .arg(&svg)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn fixture_verification_and_exit_codes() {
    // fixtures verify cleanly: exit 0
    let ok = bin()
        .args(["verify", "--patch", "fixtures/domino-variant-figure"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));

    // a conflicting labelling: exit 1
    let dir = std::env::temp_dir().join("tiling123-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let patch = dir.join("squares.json");
    bin()
        .args(["generate", "--tiling", "square", "--level", "3", "--out"])
        .arg(&patch)
        .status()
        .unwrap();
    let bad = bin()
        .args(["verify", "--rule", "chair_vp1_const", "--patch"])
        .arg(&patch)
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));

    // unusable input: exit 2
    let missing = bin()
        .args([
            "verify",
            "--rule",
            "square2x2",
            "--patch",
            "/definitely/not/here.json",
        ])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn certify_and_solve_commands() {
    let out = bin()
        .args(["certify", "--rule", "penrose_arrows"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));

    let out = bin()
        .args(["solve-periodic", "--spec", "triangle"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let dir = std::env::temp_dir().join("tiling123-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("k3.json");
    std::fs::write(&graph, r#"{"vertex_count":3,"edges":[[0,1],[1,2],[0,2]]}"#).unwrap();
    let out = bin()
        .args(["solve-finite", "--enumerate", "--graph"])
        .arg(&graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("sat"));
    assert!(text.contains("valid labellings: 6"));
}
