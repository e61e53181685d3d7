use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use two_inner_cli::grid_input;
use two_inner_core::integral::{QuadratureGrid, WeightedTriple};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_two-inner"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json_run(args: &[&str]) -> (Option<i32>, Value) {
    let out = run(&[args, &["--json"]].concat());
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code(), v)
}

fn prop<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["properties"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["id"] == id)
        .unwrap_or_else(|| panic!("no property {id}"))
}

fn f(v: &Value) -> f64 {
    v.to_string().parse().unwrap()
}

fn worked_csv(dir: &Path) -> PathBuf {
    let grid = QuadratureGrid::simpson(1.0, 2.0, 2001).unwrap();
    let t = WeightedTriple::sample(&grid, |s| s * s, |s| s, |_| 1.0, |_| 1.0).unwrap();
    write(dir, "worked.csv", &grid_input::render(&grid, &t))
}

#[test]
fn verify_passes_on_the_induced_product() {
    let (code, r) = json_run(&["verify", "--seed", "7", "--trials", "10000", "--dims", "2,3,8", "--field", "both"]);
    assert_eq!(code, Some(0));
    assert_eq!(r["verdict"]["passed"], true);
    assert_eq!(r["config"]["fields"], serde_json::json!(["real", "complex"]));
}

#[test]
fn verify_rejects_zero_trials_and_bad_dims() {
    assert_eq!(run(&["verify", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--dims", "1,3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--tol-abs", "-1"]).status.code(), Some(2));
}

#[test]
fn verify_names_the_failing_axiom_of_a_defective_evaluator() {
    let out = run(&["verify", "--trials", "200", "--dims", "3", "--field", "real", "--perturb", "0.01"]);
    assert_eq!(out.status.code(), Some(1));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("verdict: FAIL"));
    assert!(table.contains("axiom/additivity/real"));
}

#[test]
fn verify_reports_are_deterministic() {
    let args = ["verify", "--seed", "3", "--trials", "300", "--dims", "2,5", "--json"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    let c = run(&[&args[..], &["--sequential"]].concat()).stdout;
    assert_eq!(a, b);
    assert_eq!(a, c);
    let d = run(&["verify", "--seed", "4", "--trials", "300", "--dims", "2,5", "--json"]).stdout;
    assert_ne!(a, d);
}

#[test]
fn bounds_example_slacks() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "i.json",
        r#"{"field":"real","x":[1,0.5,0],"y":[1,0,0],"z":[0,0,1],"m":0.5,"M":1.5}"#,
    );
    let (code, r) = json_run(&["bounds", "--input", p.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    for (id, slack) in [("2.15", 0.036667), ("2.17", 0.036667), ("2.18", 0.083333), ("2.19", 0.49976)] {
        let s = f(&prop(&r, id)["slack"]);
        assert!((s - slack).abs() < 1e-5, "{id}: {s}");
        assert_eq!(prop(&r, id)["hypothesis_ok"], true);
    }
}

#[test]
fn bounds_flags_the_extremal_as_tight() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "e.json", r#"{"field":"real","x":[1,1,0],"y":[1,0,0],"z":[0,0,1],"a":0,"A":2}"#);
    let (code, r) = json_run(&["bounds", "--input", p.to_str().unwrap(), "--which", "2.3"]);
    assert_eq!(code, Some(0));
    let b = prop(&r, "2.3");
    assert_eq!(f(&b["slack"]), 0.0);
    assert_eq!(b["tight"], true);

    let c = write(
        dir.path(),
        "c.json",
        r#"{"field":"complex","x":[1,[0,1],0],"y":[1,0,0],"z":[0,0,1],"a":[1,-1],"A":[1,1]}"#,
    );
    let (code, r) = json_run(&["bounds", "--input", c.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert_eq!(prop(&r, "2.3")["tight"], true);
    assert_eq!(f(&prop(&r, "2.3")["lhs"]), 1.0);
}

#[test]
fn bounds_tabulates_failed_hypotheses() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "f.json", r#"{"field":"real","x":[5,3,0],"y":[1,0,0],"z":[0,0,1],"m":0.5,"M":1.5}"#);
    let (code, r) = json_run(&["bounds", "--input", p.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert_eq!(r["condition"]["holds"], false);
    let b = prop(&r, "2.3");
    assert_eq!(b["hypothesis_ok"], false);
    assert!(f(&b["slack"]) < 0.0);
    assert_eq!(b["passed"], true);
}

#[test]
fn bounds_rejects_malformed_instances() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "m.json", r#"{"field":"real","x":[1,0,0],"z":[0,0,1],"m":0.5,"M":1.5}"#);
    let out = run(&["bounds", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("`y`"));
    assert_eq!(run(&["bounds"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--input", "/nonexistent/i.json"]).status.code(), Some(2));
}

#[test]
fn integral_worked_instance() {
    let dir = tempfile::tempdir().unwrap();
    let csv = worked_csv(dir.path());
    let (code, r) = json_run(&["integral", "--input", csv.to_str().unwrap(), "--m", "2", "--M", "4"]);
    assert_eq!(code, Some(0));
    assert!((f(&prop(&r, "3.6")["lhs"]) - 1.0 / 2160.0).abs() < 1e-6);
    assert_eq!(prop(&r, "3.7")["passed"], true);
    assert_eq!(r["premise"]["holds"], true);
    let printed = r["discrepancies"].as_array().unwrap();
    let p37 = printed.iter().find(|d| d["id"] == "3.7-printed").unwrap();
    assert_eq!(p37["violated"], true);
    assert_eq!(p37["corrected_holds"], true);
    assert!((f(&p37["rhs"]) - 0.088388).abs() < 1e-6);
    assert!((f(&r["determinant"]["two_inner_det"]) - 0.25).abs() < 1e-7);

    let table = String::from_utf8(run(&["integral", "--input", csv.to_str().unwrap(), "--m", "2", "--M", "4"]).stdout).unwrap();
    assert!(table.contains("3.7-printed"));
    assert!(table.contains("violated"));
}

#[test]
fn integral_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.csv", "");
    let ragged = write(dir.path(), "ragged.csv", "node,weight,phi,f,g,h\n0,1,1,1,1,1\n1,1,1,1\n");
    let zero_h = write(dir.path(), "h.csv", "node,weight,phi,f,g,h\n0,1,1,1,1,1\n1,1,1,1,1,0\n");
    let masked = write(dir.path(), "m.csv", "node,weight,phi,f,g,h\n0,1,1,1,1,1\n1,1,1,2,1,1\n2,1,0,1,1,0\n");
    for p in [&empty, &ragged, &zero_h] {
        let out = run(&["integral", "--input", p.to_str().unwrap(), "--m", "1", "--M", "2"]);
        assert_eq!(out.status.code(), Some(2), "{p:?}");
    }
    let out = run(&["integral", "--input", zero_h.to_str().unwrap(), "--m", "1", "--M", "2"]);
    assert!(String::from_utf8(out.stderr).unwrap().contains("invalid instance"));
    let out = run(&["integral", "--input", masked.to_str().unwrap(), "--m", "1", "--M", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn integral_sync_cap() {
    let dir = tempfile::tempdir().unwrap();
    let csv = worked_csv(dir.path());
    let base = ["integral", "--input", csv.to_str().unwrap(), "--m", "2", "--M", "4"];
    assert_eq!(run(&[&base[..], &["--sync-cap", "100"]].concat()).status.code(), Some(2));
    assert_eq!(run(&[&base[..], &["--sync-cap", "100", "--no-sync-cap"]].concat()).status.code(), Some(0));
}

#[test]
fn sharpness_probes() {
    let (code, r) = json_run(&["sharpness", "--constant", "0.2499", "--which", "thm2.1", "--dims", "3"]);
    assert_eq!(code, Some(1));
    assert!(r["properties"][0]["witness"].is_object());
    let (code, _) = json_run(&["sharpness", "--constant", "0.25", "--which", "thm2.1", "--dims", "3"]);
    assert_eq!(code, Some(0));
    let (code, r) = json_run(&["sharpness", "--constant", "0.499", "--which", "thm2.2", "--dims", "2"]);
    assert_eq!(code, Some(1));
    assert!(f(&r["properties"][0]["lhs"]) > f(&r["properties"][0]["rhs"]));
    let (code, r) = json_run(&["sharpness", "--constant", "0.25", "--which", "thm2.1", "--dims", "2,3", "--field", "real"]);
    assert_eq!(code, Some(0));
    assert_eq!(r["skipped"], serde_json::json!(["thm2.1/real/2"]));
    assert_eq!(run(&["sharpness", "--constant", "0.25", "--which", "thm9"]).status.code(), Some(2));
    assert_eq!(run(&["sharpness", "--constant", "0", "--which", "thm2.2"]).status.code(), Some(2));
}

#[test]
fn output_file_and_number_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = run(&["verify", "--trials", "50", "--dims", "2", "--output", out.to_str().unwrap()]).status;
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"rel\": 1.0000000000000001e-9"));
    assert_eq!(run(&["verify", "--trials", "50", "--dims", "2", "--output", "/nonexistent/dir/r.json"]).status.code(), Some(2));
}
