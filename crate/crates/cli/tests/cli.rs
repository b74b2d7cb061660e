use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn smith(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smith")).args(args).output().expect("spawn smith")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Writes `smith corpus dump <family> <params>` to a file in `dir`.
fn dump(dir: &TempDir, name: &str, family_and_params: &[&str]) -> PathBuf {
    let mut args = vec!["corpus", "dump"];
    args.extend_from_slice(family_and_params);
    let out = smith(&args);
    assert_eq!(code(&out), 0, "dump {family_and_params:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path = dir.path().join(name);
    fs::write(&path, &out.stdout).unwrap();
    path
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn algebra_commands_pass_on_corpus() {
    let dir = TempDir::new().unwrap();
    for (i, fam) in [["truncated_polynomial", "3"], ["upper_triangular", "2"], ["cyclic_group_algebra", "3"]].iter().enumerate() {
        let path = dump(&dir, &format!("aug{i}.alg"), fam);
        for cmd in ["validate", "roundtrip", "smith-check"] {
            let out = smith(&[cmd, s(&path)]);
            assert_eq!(code(&out), 0, "{cmd} {fam:?}: {}", stdout(&out));
        }
        let ker = dir.path().join(format!("ker{i}.alg"));
        assert_eq!(code(&smith(&["augker", s(&path), "-o", s(&ker)])), 0);
        let back = dir.path().join(format!("back{i}.alg"));
        assert_eq!(code(&smith(&["unitalize", s(&ker), "-o", s(&back)])), 0);
        assert_eq!(code(&smith(&["roundtrip", s(&ker)])), 0);
        assert_eq!(code(&smith(&["validate", s(&back)])), 0);
    }
}

#[test]
fn field_flag_selects_prime_field() {
    let out = smith(&["--field", "FP:5", "corpus", "dump", "truncated_polynomial", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("FIELD FP 5"), "{}", stdout(&out));
    assert_eq!(code(&smith(&["--field", "FP:6", "corpus", "dump", "square_zero", "1"])), 2);
}

#[test]
fn porcelain_lines() {
    let dir = TempDir::new().unwrap();
    let path = dump(&dir, "sq.alg", &["square_zero", "2"]);
    let out = smith(&["--porcelain", "roundtrip", s(&path)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(!text.is_empty());
    assert!(text.lines().all(|l| l.starts_with("CHECK ") && l.contains(" PASS")), "{text}");
}

#[test]
fn chain_commands() {
    let dir = TempDir::new().unwrap();
    let c = dump(&dir, "c.cx", &["random_complex", "4", "4", "3"]);
    let m = dump(&dir, "m.cm", &["random_chain_map", "4", "4", "3"]);
    let dg = dump(&dir, "dg.dg", &["dg_square_zero", "1", "2"]);
    for args in [
        vec!["validate", s(&c)],
        vec!["homology", s(&c)],
        vec!["validate", s(&m)],
        vec!["homology", s(&m)],
        vec!["validate", s(&dg)],
        vec!["dg-roundtrip", s(&dg)],
        vec!["main-theorem", s(&dg)],
        vec!["main-theorem", s(&c)],
        vec!["stable-check", "--seed", "3", "--count", "20"],
        vec!["--field", "FP:3", "stable-check", "--count", "20"],
    ] {
        let out = smith(&args);
        assert_eq!(code(&out), 0, "{args:?}: {}", stdout(&out));
    }
}

#[test]
fn homology_output_matches_library() {
    let dir = TempDir::new().unwrap();
    let path = dump(&dir, "c.cx", &["random_complex", "11", "4", "3"]);
    let c = smith_core::format::parse_complex_file(&fs::read_to_string(&path).unwrap()).unwrap();
    let text = stdout(&smith(&["homology", s(&path)]));
    for (n, h) in c.homology() {
        assert!(text.lines().any(|l| l == format!("H_{n} = {h}")), "degree {n}: {text}");
    }
}

#[test]
fn monoidal_check_on_files_and_random() {
    let dir = TempDir::new().unwrap();
    let arrows = dump(&dir, "a.arr", &["random_arrow", "9", "3", "3"]);
    assert_eq!(code(&smith(&["monoidal-check", s(&arrows)])), 0);
    assert_eq!(code(&smith(&["monoidal-check", "--seed", "5", "--count", "30", "--max-dim", "3"])), 0);
}

#[test]
fn failing_checks_exit_1() {
    let dir = TempDir::new().unwrap();
    // e0·e0 = e1, e1·e0 = e1, e0·e1 = 0 is not associative.
    let bad = write(&dir, "bad.alg", "FIELD Q\nDIM 2\nMULT 0 0 1 1\nMULT 1 0 1 1\n");
    let out = smith(&["validate", s(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL"));
    // d² ≠ 0 is rejected while parsing, so it is malformed input.
    let bad_cx = write(&dir, "bad.cx", "FIELD Q\nRANGE 0 2\nDIMS 1 1 1\nD 1 ; 1 1 ; 1\nD 2 ; 1 1 ; 1\n");
    let out = smith(&["validate", s(&bad_cx)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("d_1∘d_2 ≠ 0"), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let nofield = write(&dir, "nofield.alg", "DIM 1\nMULT 0 0 0 1\n");
    let out = smith(&["validate", s(&nofield)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    let missing = dir.path().join("missing.alg");
    assert_eq!(code(&smith(&["validate", s(&missing)])), 2);
    let c = dump(&dir, "c.cx", &["random_complex", "1", "3", "2"]);
    assert_eq!(code(&smith(&["roundtrip", s(&c)])), 2);
    assert_eq!(code(&smith(&["corpus", "dump", "no_such_family"])), 2);
    assert_eq!(code(&smith(&["no-such-command"])), 2);
}

#[test]
fn dumps_are_deterministic() {
    for args in [["corpus", "dump", "random_complex", "7", "4", "3"], ["corpus", "dump", "random_chain_map", "7", "4", "3"]] {
        assert_eq!(stdout(&smith(&args)), stdout(&smith(&args)));
    }
}
