use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn trigon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

/// Plane and trace bijection files for q = 2.
fn q2_inputs(dir: &TempDir) -> (String, String) {
    let (plane, bij) = (path(dir, "pg2_2.plane"), path(dir, "pg2_2.bij"));
    assert_eq!(
        code(&trigon(&["plane", "gen", "--q", "2", "-o", &plane])),
        0
    );
    assert_eq!(
        code(&trigon(&["bijection", "trace", "--q", "2", "-o", &bij])),
        0
    );
    (plane, bij)
}

fn snapshot(dir: &Path) -> BTreeMap<String, String> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read_to_string(e.path()).unwrap(),
            )
        })
        .collect()
}

#[test]
fn version_names_tool_and_format() {
    let out = trigon(&["--version"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("file format 1"), "{}", stdout(&out));
}

#[test]
fn plane_gen_and_check() {
    let dir = TempDir::new().unwrap();
    let out = trigon(&["plane", "gen", "--q", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("plane pg2_2 order 2\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with('L')).count(), 7);

    let file = path(&dir, "p.plane");
    fs::write(&file, &text).unwrap();
    assert_eq!(code(&trigon(&["plane", "check", &file])), 0);

    let out = trigon(&["plane", "gen", "--q", "6"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not a prime power"));
}

#[test]
fn corrupted_plane_fails_check_with_witness() {
    let dir = TempDir::new().unwrap();
    let text = stdout(&trigon(&["plane", "gen", "--q", "2"]));
    // move one point of L0 to a point not on it
    let l0 = text.lines().find(|l| l.starts_with("L0:")).unwrap();
    let pts: Vec<&str> = l0[3..].split_whitespace().collect();
    let stranger = (0..7)
        .map(|i| format!("p{i}"))
        .find(|p| !pts.contains(&p.as_str()))
        .unwrap();
    let bad_line = format!("L0: {} {} {stranger}", pts[0], pts[1]);
    let file = path(&dir, "bad.plane");
    fs::write(&file, text.replacen(l0, &bad_line, 1)).unwrap();
    let out = trigon(&["plane", "check", &file]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("not a projective plane"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn dual_of_dual_is_the_original() {
    let dir = TempDir::new().unwrap();
    let (plane, _) = q2_inputs(&dir);
    let (d1, d2) = (path(&dir, "d1"), path(&dir, "d2"));
    assert_eq!(code(&trigon(&["plane", "dual", &plane, "-o", &d1])), 0);
    assert_eq!(code(&trigon(&["plane", "dual", &d1, "-o", &d2])), 0);
    assert!(fs::read_to_string(&d1)
        .unwrap()
        .starts_with("plane pg2_2-dual order 2"));
    assert_eq!(
        fs::read_to_string(&d2).unwrap(),
        fs::read_to_string(&plane).unwrap()
    );
}

#[test]
fn trace_bijection_exit_codes() {
    let dir = TempDir::new().unwrap();
    let (plane, bij) = q2_inputs(&dir);
    assert_eq!(code(&trigon(&["bijection", "verify", &plane, &bij])), 0);

    let out = trigon(&["bijection", "trace", "--q", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("characteristic"));

    let out = trigon(&["bijection", "trace", "--q", "5"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("P2"));
}

#[test]
fn verify_names_the_broken_property() {
    let dir = TempDir::new().unwrap();
    let (plane, bij) = q2_inputs(&dir);
    let text = fs::read_to_string(&bij).unwrap();
    let plane_text = fs::read_to_string(&plane).unwrap();
    // send p0 to a line through it, swapping images with that line's owner
    let l0 = text
        .lines()
        .find(|l| l.starts_with("p0 ->"))
        .unwrap()
        .to_string();
    let own = plane_text
        .lines()
        .find(|l| l.starts_with('L') && l.split_whitespace().any(|t| t == "p0"))
        .unwrap()
        .split(':')
        .next()
        .unwrap()
        .to_string();
    let holder = text
        .lines()
        .find(|l| l.ends_with(&format!("-> {own}")))
        .unwrap()
        .to_string();
    let swapped = text
        .replacen(&l0, "TMP", 1)
        .replacen(
            &holder,
            &holder.replace(&own, l0.rsplit(' ').next().unwrap()),
            1,
        )
        .replacen("TMP", &format!("p0 -> {own}"), 1);
    let bad = path(&dir, "bad.bij");
    fs::write(&bad, swapped).unwrap();
    let out = trigon(&["bijection", "verify", &plane, &bad]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("P1"), "{}", stderr(&out));

    let out = trigon(&[
        "build",
        "--plane",
        &plane,
        "--bijection",
        &bad,
        "--triangle",
        "-o",
        &path(&dir, "o"),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("bijection: P1"), "{}", stderr(&out));
}

#[test]
fn search_is_deterministic_across_jobs() {
    let dir = TempDir::new().unwrap();
    let plane = path(&dir, "pg2_3.plane");
    assert_eq!(
        code(&trigon(&["plane", "gen", "--q", "3", "-o", &plane])),
        0
    );
    let one = trigon(&["bijection", "search", &plane, "--jobs", "1"]);
    let four = trigon(&["bijection", "search", &plane, "--jobs", "4"]);
    assert_eq!((code(&one), code(&four)), (0, 0));
    assert_eq!(one.stdout, four.stdout);
    let bij = path(&dir, "pg2_3.bij");
    fs::write(&bij, &one.stdout).unwrap();
    assert_eq!(code(&trigon(&["bijection", "verify", &plane, &bij])), 0);

    let out = trigon(&["bijection", "search", &plane, "--budget", "5"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn build_triangle_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let (plane, bij) = q2_inputs(&dir);
    let out_dir = path(&dir, "tri");
    let args = [
        "build",
        "--plane",
        &plane,
        "--bijection",
        &bij,
        "--triangle",
        "-o",
        &out_dir,
    ];
    let out = trigon(&args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = stdout(&out);
    assert!(report.starts_with("complex V=3 E=21 F=21 k=3 chi=3 curvature=euclidean\n"));
    assert_eq!(report.matches("gen-gon m=3").count(), 3);
    let first = snapshot(Path::new(&out_dir));
    let names: Vec<_> = first.keys().cloned().collect();
    assert_eq!(
        names,
        [
            "complex.txt",
            "link-0.edges",
            "link-1.edges",
            "link-2.edges",
            "manifest.txt",
            "presentation.txt",
            "triples.txt"
        ]
    );
    assert!(first["triples.txt"].starts_with("triples over pg2_2 "));
    assert!(first["manifest.txt"].contains("input plane "));

    assert_eq!(code(&trigon(&args)), 0);
    assert_eq!(snapshot(Path::new(&out_dir)), first);
}

#[test]
fn build_word() {
    let dir = TempDir::new().unwrap();
    let (plane, bij) = q2_inputs(&dir);
    let out = trigon(&[
        "build",
        "--plane",
        &plane,
        "--bijection",
        &bij,
        "--word",
        "abcbcab",
        "-o",
        &path(&dir, "h"),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).starts_with("complex V=7 E=49 F=21 k=7 chi=-21 curvature=hyperbolic\n"));

    let out = trigon(&[
        "build",
        "--plane",
        &plane,
        "--bijection",
        &bij,
        "--word",
        "abca",
        "-o",
        &path(&dir, "x"),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cyclic power"));

    let out = trigon(&[
        "build",
        "--plane",
        &plane,
        "--bijection",
        &bij,
        "-o",
        &path(&dir, "y"),
    ]);
    assert_eq!(code(&out), 2, "one of --triangle or --word is required");
}
