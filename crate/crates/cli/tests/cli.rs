use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const QUINTIC: &str = "label: quintic\nprecision: 6\ngroups:\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n-1 -1 -1 -1\n";

// Conv{1, -2} has interior lattice points besides the origin.
const NON_FANO: &str = "label: segment\ngroups:\n1\n-2\n";

fn mirrormap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mirrormap")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn check_quintic_passes_with_expected_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "q.txt", QUINTIC);
    let out = mirrormap(&["check", &f]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["format_version"], 1);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["bounds"]["d"], "25");
    assert_eq!(r["bounds"]["count"], 6);
    assert_eq!(r["free_rank"], 1);
    assert_eq!(r["checks"].as_array().unwrap().len(), 7);
}

#[test]
fn flags_override_headers_and_out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "q.txt", QUINTIC);
    let target = dir.path().join("report.json");
    let out = mirrormap(&[
        "check",
        &f,
        "-P",
        "3",
        "--checks",
        "naive-integrality,fano",
        "--out",
        target.to_str().unwrap(),
        "--sequential",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(r["precision"], 3);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert_eq!(names, ["naive-integrality", "fano"]);
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.txt", NON_FANO);
    let out = mirrormap(&["check", &f, "--checks", "fano"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["status"], "fail");
    assert_eq!(r["checks"][0]["verdict"]["result"], "fail");
}

#[test]
fn malformed_input_exits_two_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "precision: 4\ngroups:\n1 0\n0 1 2\n");
    let out = mirrormap(&["check", &f]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn assumption_violation_exits_two() {
    // All vectors on one side of a hyperplane: no positive kernel element.
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "half.txt", "groups:\n1 0\n0 1\n1 1\n");
    let out = mirrormap(&["check", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "error");
}

#[test]
fn batch_isolates_corrupted_file() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.txt", QUINTIC);
    write(dir.path(), "b.txt", "groups:\n1 zz\n");
    write(dir.path(), ".hidden", "garbage");
    let out = mirrormap(&["batch", dir.path().to_str().unwrap(), "-P", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["summary"]["total"], 2);
    assert_eq!(r["summary"]["passed"], 1);
    assert_eq!(r["summary"]["errors"], 1);
    assert_eq!(r["reports"][1]["label"], "b");
    assert!(r["reports"][1]["error"].as_str().unwrap().contains("line 2"));
}

#[test]
fn batch_of_passing_files_exits_zero_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "q.txt", QUINTIC);
    write(dir.path(), "p2.txt", "groups:\n1 0\n0 1\n-1 -1\n");
    let run = || {
        let out = mirrormap(&["batch", dir.path().to_str().unwrap(), "-P", "8", "--format", "csv"]);
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    let first = run();
    assert_eq!(first, run());
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("label,status,check,index,verdict"));
    assert!(text.lines().skip(1).all(|l| !l.contains(",fail,")));
}

#[test]
fn dataset_commands() {
    let out = mirrormap(&["dataset", "list"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 16);

    let out = mirrormap(&["dataset", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("16/16 reflexive, 16/16 Fano"));

    let out = mirrormap(&["dataset", "show", "16"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("label: reflexive-2d-16"));

    assert_eq!(mirrormap(&["dataset", "show", "17"]).status.code(), Some(2));
}

#[test]
fn shown_dataset_entry_is_valid_input() {
    let dir = tempfile::tempdir().unwrap();
    let shown = mirrormap(&["dataset", "show", "7"]);
    let f = write(dir.path(), "e.txt", &String::from_utf8(shown.stdout).unwrap());
    let out = mirrormap(&["check", &f, "-P", "10", "--checks", "conjectures", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("reflexive-2d-07: pass"));
}

#[test]
fn bundled_dataset_batch_passes() {
    let out = mirrormap(&["batch", "--dataset", "-P", "12", "--checks", "conjectures"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["summary"]["passed"], 16);
}

#[test]
fn quintic_prints_known_coefficients() {
    let out = mirrormap(&["quintic", "-P", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("psi: 1, 154, 155423, 237738254"));
    assert!(text.contains("Q integral: pass"));
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(mirrormap(&["check"]).status.code(), Some(2));
    assert_eq!(mirrormap(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "q.txt", QUINTIC);
    assert_eq!(mirrormap(&["check", &f, "--checks", "nope"]).status.code(), Some(2));
    assert_eq!(mirrormap(&["check", "/definitely/not/here"]).status.code(), Some(2));
}
