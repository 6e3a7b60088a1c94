use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_diffconv");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("DIFFCONV_STRICT").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn p11_spec(dir: &TempDir) -> PathBuf {
    let path = dir.path().join("p11.spec");
    let out = run(&["new-code", "--p", "11", "--alpha", "1/z", "--d", "7", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
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
fn new_code_writes_generator_line() {
    let dir = TempDir::new().unwrap();
    let text = fs::read_to_string(p11_spec(&dir)).unwrap();
    assert!(text.contains("g=[5/z^6, 8/z^5, 10/z^4, 2/z^3, 10/z^2, 3/z, 1]\n"), "{text}");
}

#[test]
fn new_code_range_and_cyclicity_errors() {
    let out = run(&["new-code", "--p", "11", "--alpha", "1/z", "--d", "12"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("designed distance out of range"));
    let out = run(&["new-code", "--p", "5", "--alpha", "z^5+1", "--d", "3"]);
    assert_eq!(code(&out), 3);
    let out = run(&["new-code", "--p", "5", "--alpha", "1/z+", "--d", "3"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn encode_matches_golden_codeword_file() {
    let dir = TempDir::new().unwrap();
    let spec = p11_spec(&dir);
    let msg = write(&dir, "m", "1\nz\n0\n0\nz^4\n");
    let out = run(&["encode", "--spec", s(&spec), "--in", s(&msg)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "3/z^6\n5/z^5\n3/z^4\n7/z^3\n8/z^2\n5/z\n3\n3*z\n9*z^2\n3*z^3\nz^4\n");
}

#[test]
fn corrupt_then_decode_three_errors() {
    let dir = TempDir::new().unwrap();
    let spec = p11_spec(&dir);
    let c = write(&dir, "c", "3/z^6\n5/z^5\n3/z^4\n7/z^3\n8/z^2\n5/z\n3\n3*z\n9*z^2\n3*z^3\nz^4\n");
    let y = dir.path().join("y");
    let out = run(&[
        "corrupt",
        "--spec",
        s(&spec),
        "--in",
        s(&c),
        "--positions",
        "1,6,9",
        "--values",
        "1;8;8*z^3",
        "--out",
        s(&y),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(&y).unwrap(),
        "3/z^6\n(z^5+5)/(z^5)\n3/z^4\n7/z^3\n8/z^2\n5/z\n0\n3*z\n9*z^2\n0\nz^4\n"
    );
    let out = run(&["decode", "--spec", s(&spec), "--in", s(&y)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = stdout(&out);
    assert!(report.contains("status=errors\npositions=1,6,9\nvalues=1;8;8*z^3\n"), "{report}");
    assert!(report.contains("message=1;z;0;0;z^4\n"), "{report}");
}

#[test]
fn roundtrip_and_capacity() {
    let dir = TempDir::new().unwrap();
    let spec = p11_spec(&dir);
    let msg = write(&dir, "m", "1\nz\n0\n0\nz^4\n");
    assert_eq!(code(&run(&["roundtrip", "--spec", s(&spec), "--in", s(&msg)])), 0);
    let out = run(&["roundtrip", "--spec", s(&spec), "--in", s(&msg), "--positions", "0,10", "--values", "z;1/(z+1)"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let far = write(&dir, "far", "1\n1\n1\n1\n1\n1\n1\n1\n1\n1\n1\n");
    assert_eq!(code(&run(&["decode", "--spec", s(&spec), "--in", s(&far)])), 5);
}

#[test]
fn strict_mode_and_io_errors() {
    let dir = TempDir::new().unwrap();
    let spec = p11_spec(&dir);
    let msg = write(&dir, "m", "13\nz\n0\n0\nz^4\n");
    assert_eq!(code(&run(&["encode", "--spec", s(&spec), "--in", s(&msg)])), 0);
    let strict = Command::new(BIN)
        .args(["encode", "--spec", s(&spec), "--in", s(&msg)])
        .env("DIFFCONV_STRICT", "1")
        .output()
        .unwrap();
    assert_eq!(code(&strict), 4);
    assert!(stderr(&strict).contains("line 1"));
    assert_eq!(code(&run(&["encode", "--spec", "/nonexistent/spec", "--in", s(&msg)])), 4);
}

#[test]
fn trials_report() {
    let dir = TempDir::new().unwrap();
    let spec = p11_spec(&dir);
    let out = run(&["trials", "--spec", s(&spec), "--trials", "50", "--errors", "3", "--seed", "4"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("successes=50\n"));
    let out = run(&["trials", "--spec", s(&spec), "--trials", "50", "--errors", "0"]);
    assert!(stdout(&out).contains("successes=50\nbasic_failures=0\n"));
    let out = run(&["trials", "--spec", s(&spec), "--trials", "50", "--errors", "2", "--degree-bound", "0"]);
    assert!(stderr(&out).contains("successes=50 basic_failures=50"), "{}", stderr(&out));
    let out = run(&["trials", "--spec", s(&spec), "--trials", "5", "--errors", "4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn demos() {
    assert_eq!(code(&run(&["demo", "p11"])), 0);
    assert_eq!(code(&run(&["demo", "--demo", "p5"])), 0);
    let out = run(&["demo", "p11", "--perturb-golden"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("differs from the golden value"));
}
