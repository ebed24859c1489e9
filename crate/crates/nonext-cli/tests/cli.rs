//! End-to-end tests for the command surface: values, formats, label
//! alignment, and the exit-code contract.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_nonext")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Pull `value` cells out of a CSV table for rows matching a predicate.
fn column<'a>(csv: &'a str, col: usize, filter: impl Fn(&str) -> bool + 'a) -> Vec<&'a str> {
    csv.lines()
        .skip(1)
        .filter(|l| filter(l))
        .map(move |l| l.split(',').nth(col).unwrap())
        .collect()
}

#[test]
fn entropy_uniform_two_bins() {
    let dir = TempDir::new().unwrap();
    let u = write(&dir, "u.hist", "a,2\nb,2\n");
    let out = run(&["entropy", "--q", "2", u.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let tsallis = column(&csv, 3, |l| l.contains(",tsallis,"));
    assert_eq!(tsallis.len(), 1);
    assert!((tsallis[0].parse::<f64>().unwrap() - 0.5).abs() < 1e-9);
}

#[test]
fn entropy_single_bin_is_zero() {
    let dir = TempDir::new().unwrap();
    let one = write(&dir, "one.hist", "only,7\n");
    let out = run(&["entropy", one.to_str().unwrap()]);
    assert!(out.status.success());
    for cell in column(&stdout(&out), 3, |_| true) {
        assert_eq!(cell.parse::<f64>().unwrap(), 0.0, "all entropies vanish");
    }
}

#[test]
fn entropy_default_grid() {
    let dir = TempDir::new().unwrap();
    let u = write(&dir, "u.hist", "a,1\nb,3\n");
    let out = run(&["entropy", u.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let qs = column(&csv, 2, |l| l.contains(",tsallis,"));
    assert_eq!(qs, ["0", "0.5", "1", "1.5", "2"]);
}

#[test]
fn divergence_identical_files_are_zero() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.hist", "x,1\ny,3\n");
    let b = write(&dir, "b.hist", "x,1\ny,3\n");
    // All the divergence-type measures vanish on identical inputs, on and
    // off the diagonal.
    let out = run(&[
        "divergence",
        "--measure",
        "kld,d_q,renyi_div,jsd,jrd,jtd",
        "--q",
        "2",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for cell in column(&stdout(&out), 4, |_| true) {
        assert!(
            cell.parse::<f64>().unwrap().abs() < 1e-12,
            "expected zeros, got {cell}"
        );
    }
    // The q-difference is the exception: T_q(p, p) != 0 away from q = 1.
    // Here S_2(p) = 1 - (1/16 + 9/16) = 3/8, and T_2(p, p) = S_2(p)/2.
    let out = run(&[
        "divergence",
        "--measure",
        "jtqd",
        "--q",
        "2",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for cell in column(&stdout(&out), 4, |_| true) {
        assert!((cell.parse::<f64>().unwrap() - 0.1875).abs() < 1e-12);
    }
}

#[test]
fn divergence_disjoint_pair() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.hist", "x,1\n");
    let b = write(&dir, "b.hist", "y,1\n");
    let out = run(&[
        "divergence",
        "--measure",
        "kld,jtqd",
        "--q",
        "2",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = stdout(&out);
    // Absolute-continuity failure renders as the `inf` literal.
    let kld_cells = column(&csv, 4, |l| l.starts_with("kld,"));
    assert!(kld_cells.contains(&"inf"));
    // Disjoint supports reach S_q(1/2, 1/2) = 0.5 at q = 2.
    let jtqd_cells: Vec<f64> = column(&csv, 4, |l| l.starts_with("jtqd,"))
        .into_iter()
        .map(|c| c.parse().unwrap())
        .collect();
    assert!(jtqd_cells.iter().any(|v| (v - 0.5).abs() < 1e-9));
}

#[test]
fn sweep_identical_uniform_pair_goes_negative_below_one() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.hist", "x,1\ny,1\n");
    let b = write(&dir, "b.hist", "x,5\ny,5\n");
    let out = run(&[
        "sweep",
        "--q-grid",
        "0:1:0.5",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let at_half: f64 = column(&csv, 1, |l| l.starts_with("0.5,"))[0]
        .parse()
        .unwrap();
    assert!(
        at_half < 0.0,
        "jtqd of identical uniforms at q=0.5: {at_half}"
    );
    let at_one: f64 = column(&csv, 1, |l| l.starts_with("1,"))[0].parse().unwrap();
    assert!(at_one.abs() < 1e-12);
}

#[test]
fn sweep_weights_flag_overrides_uniform() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.hist", "x,1\n");
    let b = write(&dir, "b.hist", "y,1\n");
    let out = run(&[
        "sweep",
        "--q",
        "2",
        "--weights",
        "0.3,0.7",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // Disjoint degenerates: jtqd = S_2(pi) = 1 - (0.09 + 0.49).
    let v: f64 = column(&stdout(&out), 1, |l| l.starts_with("2,"))[0]
        .parse()
        .unwrap();
    assert!((v - 0.42).abs() < 1e-9, "got {v}");
}

#[test]
fn sort_labels_flag_gives_order_independent_output() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.hist", "z,1\nx,2\n");
    let b = write(&dir, "b.hist", "x,2\nz,1\n");
    let fwd = run(&[
        "--sort-labels",
        "divergence",
        "--measure",
        "jtqd",
        "--q",
        "1",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert!(fwd.status.success());
    // Identical content in different order: zero divergence everywhere.
    for cell in column(&stdout(&fwd), 4, |_| true) {
        assert!(cell.parse::<f64>().unwrap().abs() < 1e-12);
    }
}

#[test]
fn verify_default_run_passes() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let csv = stdout(&out);
    assert!(csv.lines().count() > 10);
    // Check names may be quoted (they can contain commas), so look for the
    // verdict field rather than splitting naively.
    for row in csv.lines().skip(1) {
        assert!(row.contains(",pass,"), "row: {row}");
    }
}

#[test]
fn verify_only_bounds_runs_single_check() {
    let out = run(&["verify", "--only", "bounds", "--trials", "50"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("bounds,pass,"));
}

#[test]
fn verify_is_deterministic_per_seed() {
    let a = run(&["verify", "--trials", "60", "--seed", "11"]);
    let b = run(&["verify", "--trials", "60", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "fixed seed must be byte-identical");
    let c = run(&["verify", "--trials", "60", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout, "different seed should differ");
}

#[test]
fn verify_unknown_check_is_usage_error() {
    let out = run(&["verify", "--only", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn minimize_linear_returns_vertex() {
    let dir = TempDir::new().unwrap();
    let p2 = write(&dir, "p2.hist", "x,2\ny,8\n");
    let out = run(&["minimize", "--q", "2", p2.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let row = csv.lines().nth(1).unwrap();
    let minimizer = row.split(',').next_back().unwrap();
    let parts: Vec<f64> = minimizer
        .trim_matches('"')
        .split(' ')
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(parts, [0.0, 1.0]);
}

#[test]
fn minimize_jsd_returns_input() {
    let dir = TempDir::new().unwrap();
    let p2 = write(&dir, "p2.hist", "x,3\ny,7\n");
    let out = run(&["minimize", "--q", "1", p2.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let row = csv.lines().nth(1).unwrap();
    let minimizer = row.split(',').next_back().unwrap();
    let parts: Vec<f64> = minimizer
        .trim_matches('"')
        .split(' ')
        .map(|s| s.parse().unwrap())
        .collect();
    assert!((parts[0] - 0.3).abs() < 1e-4);
    assert!((parts[1] - 0.7).abs() < 1e-4);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.hist", "x,1\n");
    let b = write(&dir, "b.hist", "y,1\n");

    // 1: usage (empty grid, conflicting flags, missing args).
    let out = run(&[
        "sweep",
        "--q-grid",
        "2:1:1",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["entropy"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["entropy", "--q", "-1", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // 2: input errors name the file (and line for parse errors).
    let bad = write(&dir, "bad.hist", "x,1\noops\n");
    let out = run(&["entropy", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("bad.hist:2"), "stderr: {err}");

    let missing = dir.path().join("missing.hist");
    let out = run(&["entropy", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing.hist"));

    // 4: optimizer non-convergence (q > 2 with a zero iteration budget),
    // reported with the best iterate.
    let out = run(&[
        "minimize",
        "--q",
        "3",
        "--iterations",
        "0",
        a.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("did not converge"));

    // 0: success with --help.
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn structured_output_is_json_lines() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.hist", "x,1\n");
    let b = write(&dir, "b.hist", "y,1\n");
    let out = run(&[
        "--format",
        "structured",
        "sweep",
        "--q",
        "1",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v.get("q").is_some() && v.get("jtqd").is_some());
    }

    let out = run(&[
        "--format",
        "structured",
        "verify",
        "--only",
        "fast-paths",
        "--trials",
        "40",
    ]);
    assert!(out.status.success());
    let line = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert_eq!(v["name"], "fast-paths");
    assert_eq!(v["verdict"], "pass");
    assert!(v.get("witness").is_some());
}
