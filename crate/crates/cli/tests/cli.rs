use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_inellipse"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_doc(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn close(v: &Value, want: f64, tol: f64) {
    let got = v.as_f64().expect("number");
    assert!((got - want).abs() <= tol, "{got} vs {want}");
}

const RECT: &str = r#"{"vertices": [[0, 0], [1, 0], [1, 2], [0, 2]], "id": "rect"}"#;
const SQUARE: &str = r#"{"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}"#;
const GENERIC: &str = r#"{"vertices": [[0, 0], [1, 0], [2, 3], [0, 1]]}"#;

#[test]
fn rectangle_max_ellipse() {
    let dir = TempDir::new().unwrap();
    let p = write_doc(&dir, "rect.json", RECT);
    let out = run(&["max-ellipse", arg(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["equation"], "4x^2 + y^2 - 4x - 2y + 1 = 0");
    assert_eq!(v["route"], "midpoint_ellipse");
    assert_eq!(v["id"], "rect");
    let h = 3f64.sqrt() / 2.0;
    let mut ys: Vec<f64> = v["foci"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| {
            close(&f["x"], 0.5, 1e-12);
            f["y"].as_f64().unwrap()
        })
        .collect();
    ys.sort_by(f64::total_cmp);
    assert!((ys[0] - (1.0 - h)).abs() < 1e-12 && (ys[1] - (1.0 + h)).abs() < 1e-12);
    close(&v["ratio"], std::f64::consts::FRAC_PI_4, 1e-12);
    close(&v["bound_gap"], 0.0, 1e-12);
}

#[test]
fn verify_unit_square() {
    let dir = TempDir::new().unwrap();
    let p = write_doc(&dir, "sq.json", SQUARE);
    let out = run(&["verify", arg(&p), "--samples", "100"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["input"]["best_fit_degenerate"], true);
    assert_eq!(v["input"]["focal_line"]["degenerate"], true);
    close(
        &v["input"]["inequality"]["ratio"],
        std::f64::consts::FRAC_PI_4,
        1e-12,
    );
    assert_eq!(v["suite"]["outcomes"].as_array().unwrap().len(), 10);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("degenerate"));
    assert_eq!(
        stderr.lines().filter(|l| l.starts_with("[PASS]")).count(),
        11
    );
}

#[test]
fn non_convex_input_is_rejected() {
    let dir = TempDir::new().unwrap();
    let p = write_doc(
        &dir,
        "nc.json",
        r#"{"vertices": [[0, 0], [2, 0], [0.5, 0.5], [0, 2]]}"#,
    );
    let out = run(&["analyze", arg(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotConvex"));
}

#[test]
fn collinear_input_is_rejected() {
    let dir = TempDir::new().unwrap();
    let p = write_doc(
        &dir,
        "c.json",
        r#"{"vertices": [[0, 0], [1, 0], [2, 0], [0, 1]]}"#,
    );
    let out = run(&["max-ellipse", arg(&p)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_json_exits_2() {
    let mut child = bin()
        .args(["analyze", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"{\"vertices\": [[0, 0], [1")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["analyze", "/nonexistent/quad.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_exits_2() {
    assert_eq!(run(&["analyze", "--bogus"]).status.code(), Some(2));
}

#[test]
fn unsupported_format_exits_2() {
    let dir = TempDir::new().unwrap();
    let p = write_doc(&dir, "g.json", GENERIC);
    let out = run(&["max-ellipse", arg(&p), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_round_trips() {
    let dir = TempDir::new().unwrap();
    let p = write_doc(
        &dir,
        "g.json",
        r#"{"vertices": [[2, 3], [0, 0], [1, 0], [0, 1]], "id": "g"}"#,
    );
    let first = run(&["analyze", arg(&p)]);
    assert_eq!(first.status.code(), Some(0));
    let v = json(&first);
    close(&v["canonical"]["s"], 2.0, 1e-12);
    close(&v["canonical"]["t"], 3.0, 1e-12);
    close(&v["area"], 2.5, 1e-12);
    let again = write_doc(
        &dir,
        "again.json",
        std::str::from_utf8(&first.stdout).unwrap(),
    );
    let second = run(&["analyze", arg(&again)]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let p = write_doc(&dir, "g.json", GENERIC);
    let dest = dir.path().join("family.csv");
    let out = run(&["family", arg(&p), "--members", "5", "--out", arg(&dest)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&dest).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("index,parameter_kind,parameter,area"));
    assert!(lines[1..].iter().all(|l| l.split(',').nth(1) == Some("h")));
}

#[test]
fn svg_is_deterministic_and_rotated() {
    let dir = TempDir::new().unwrap();
    let p = write_doc(&dir, "g.json", GENERIC);
    let a = run(&["render", arg(&p)]);
    let b = run(&["render", arg(&p)]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let svg = String::from_utf8(a.stdout).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("<polygon points=\"0,0 1,0 2,3 0,1\""));
    assert!(svg.contains("<ellipse") && svg.contains("transform=\"rotate("));
    assert!(svg.contains("<line"));
    assert_eq!(svg.matches("<circle").count(), 2);
}

#[test]
fn bestfit_square_is_degenerate() {
    let dir = TempDir::new().unwrap();
    let p = write_doc(&dir, "sq.json", SQUARE);
    let v = json(&run(&["bestfit", arg(&p)]));
    assert_eq!(v["degenerate"], true);
    assert!(v["line"].is_null());
    close(&v["objective"], 1.0, 1e-12);
}

#[test]
fn bestfit_generic_has_a_line() {
    let dir = TempDir::new().unwrap();
    let p = write_doc(&dir, "g.json", GENERIC);
    let v = json(&run(&["bestfit", arg(&p)]));
    assert_eq!(v["degenerate"], false);
    assert!(v["line"]["angle"].as_f64().is_some());
}

#[test]
fn conjecture_without_candidates_exits_0() {
    let dir = TempDir::new().unwrap();
    let cand = dir.path().join("cand.json");
    let out = run(&["conjecture", "--samples", "500", "--candidates", arg(&cand)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["samples"], 500);
    assert!(v["candidates"].as_array().unwrap().is_empty());
    assert!(v["min_ratio"].as_f64().unwrap() >= std::f64::consts::FRAC_PI_2 - 1e-9);
    assert!(!cand.exists());
}

#[test]
fn conjecture_csv_rows() {
    let dir = TempDir::new().unwrap();
    let cand = dir.path().join("cand.json");
    let out = run(&[
        "conjecture",
        "--samples",
        "50",
        "--format",
        "csv",
        "--candidates",
        arg(&cand),
    ]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 51);
    assert!(csv.lines().nth(1).unwrap().starts_with("0,square,"));
}

#[test]
fn help_lists_csv_columns() {
    let out = run(&["family", "--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(
        "index,parameter_kind,parameter,area,center_x,center_y,semi_major,semi_minor,phi"
    ));
    let out = run(&["conjecture", "--help"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("CSV columns"));
}

#[test]
fn rectangle_render_has_one_rotated_ellipse() {
    let dir = TempDir::new().unwrap();
    let p = write_doc(&dir, "rect.json", RECT);
    let out = run(&["render", arg(&p), "--show", "max,foci"]);
    assert_eq!(out.status.code(), Some(0));
    let svg = String::from_utf8(out.stdout).unwrap();
    assert_eq!(svg.matches("<ellipse").count(), 1);
    assert!(svg.contains("cx=\"0.5\" cy=\"1\" rx=\"1\" ry=\"0.5\" transform=\"rotate(90 0.5 1)\""));
    assert_eq!(svg.matches("<circle").count(), 2);
    assert!(!svg.contains("<line"));
}

#[test]
fn self_intersecting_order_of_convex_points_is_reordered() {
    let dir = TempDir::new().unwrap();
    let p = write_doc(
        &dir,
        "bow.json",
        r#"{"vertices": [[0, 0], [1, 1], [1, 0], [0, 1]]}"#,
    );
    let out = run(&["analyze", arg(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["flags"]["is_parallelogram"], true);
    close(&v["area"], 1.0, 1e-15);
}
