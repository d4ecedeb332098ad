use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use basketball::forest::Matching;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_basketball"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

#[test]
fn golden_outputs() {
    let mut paths: Vec<PathBuf> = fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    paths.sort();
    assert!(paths.len() >= 15);
    for p in paths {
        let text = fs::read_to_string(&p).unwrap();
        let (first, expected) = text.split_once('\n').unwrap();
        let args: Vec<&str> = first.strip_prefix("$ ").expect("command line").split_whitespace().collect();
        let out = run(&args);
        assert!(out.status.success(), "{}: {}", p.display(), String::from_utf8_lossy(&out.stderr));
        assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "{}", p.display());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "--poly", "2,0,1"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--poly", "1,0,3q"]).status.code(), Some(2));
    assert_eq!(run(&["classify3", "--coeffs", "1,2,3"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--n", "9", "--basketballs"]).status.code(), Some(4));
    assert_eq!(run(&["series", "--which", "partitions", "--order", "100"]).status.code(), Some(4));
    assert_eq!(run(&["analyze", "--poly", "1,0,-3-3i,0", "--max-steps", "3"]).status.code(), Some(3));
    assert_eq!(run(&["qn", "--n", "5"]).status.code(), Some(0));
}

#[test]
fn parse_errors_carry_a_position() {
    let out = run(&["analyze", "--poly", "1, 0, 3q"]);
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("position 6"), "{msg}");
}

#[test]
fn printed_matchings_parse_back() {
    for poly in ["1,0,0,1", "1,0,-3-3i,0", "1,1/2,-2,i,3"] {
        let out = run(&["analyze", "--poly", poly]);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        let n = poly.split(',').count() as u32 - 1;
        for line in text.lines().filter(|l| l.starts_with("R: ") || l.starts_with("I: ")) {
            let m = Matching::parse(&line[3..], 4 * n).unwrap();
            assert_eq!(m.to_string(), line[3..]);
        }
    }
}

#[test]
fn svg_is_reproducible() {
    let dir = std::env::temp_dir().join(format!("basketball-svg-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.svg"), dir.join("b.svg"));
    for p in [&a, &b] {
        let out = run(&["analyze", "--poly", "1,0,-3-3i,1", "--svg", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let (x, y) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(x.starts_with(b"<svg"));
    assert_eq!(x, y);
    fs::remove_dir_all(&dir).unwrap();
}
