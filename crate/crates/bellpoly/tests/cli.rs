//! End-to-end checks of the command-line interface: exit codes, output
//! determinism, and basic formats.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bellpoly"))
}

#[test]
fn vertices_n3_reports_count() {
    let out = bin().args(["vertices", "--n", "3"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("24 vertices"), "{text}");
}

#[test]
fn facets_refused_at_n6() {
    let out = bin().args(["facets", "--n", "6"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_state_name_is_input_error() {
    let out = bin().args(["gme", "--state", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn seesaw_dimension_cap_is_resource_error() {
    let out = bin()
        .args([
            "seesaw", "--nn", "-1,-3,-1,1,2,3", "--n", "3", "--d", "30", "--seeds", "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_inequality_is_input_error() {
    let out = bin().args(["nsbound"]).output().unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn nsbound_n3_class6() {
    let out = bin()
        .args(["nsbound", "--nn", "-1,-3,-1,1,2,3", "--n", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("beta_ns = 13"), "{text}");
    assert!(text.contains("\"verified\": true"), "{text}");
}

#[test]
fn qbound_outputs_are_deterministic() {
    let dir = std::env::temp_dir();
    let a = dir.join("bellpoly_test_qbound_a.json");
    let b = dir.join("bellpoly_test_qbound_b.json");
    for path in [&a, &b] {
        let out = bin()
            .args([
                "qbound",
                "--nn",
                "-1,-3,-1,1,2,3",
                "--n",
                "3",
                "--starts",
                "5",
                "--seed",
                "7",
                "--out",
                path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let ba = std::fs::read(&a).unwrap();
    let bb = std::fs::read(&b).unwrap();
    assert_eq!(ba, bb, "identical config must give byte-identical output");
    let _ = std::fs::remove_file(a);
    let _ = std::fs::remove_file(b);
}

#[test]
fn classify_csv_shape() {
    let dir = std::env::temp_dir();
    let path = dir.join("bellpoly_test_classify.csv");
    let out = bin()
        .args(["classify", "--n", "3", "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.starts_with("class,"));
    let _ = std::fs::remove_file(path);
}
