//! End-to-end tests of the `galg` binary: output shapes, exit codes,
//! environment overrides, and error reporting.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn galg(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_galg"));
    cmd.args(args);
    cmd
}

fn run(args: &[&str]) -> Output {
    galg(args).output().expect("binary runs")
}

fn temp_file(content: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f.flush().unwrap();
    f
}

fn stdout_json(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

const TRIANGLE: &str = "vertices 3\n0 1\n0 2\n1 2\n";
const SINGLE_EDGE: &str = "vertices 2\n0 1\n";
const K4: &str = "vertices 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const DISCONNECTED: &str = "vertices 4\n0 1\n2 3\n";

#[test]
fn series_c_triangle_json_shape() {
    let g = temp_file(TRIANGLE);
    let out = run(&[
        "series",
        g.path().to_str().unwrap(),
        "--algebra",
        "C",
        "--json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["series"], serde_json::json!([1, 2, 3, 1]));
    assert_eq!(v["total"], 7);
    assert_eq!(v["plateau_k"], 3);
    assert_eq!(v["forests"], 7);
    assert!(v.get("trees").is_none());
    assert!(v.get("consensus").is_none());
}

#[test]
fn series_tree_algebras_report_tree_counts() {
    let g = temp_file(TRIANGLE);
    let out = run(&[
        "series",
        g.path().to_str().unwrap(),
        "--algebra",
        "CT",
        "--json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["series"], serde_json::json!([1, 2]));
    assert_eq!(v["total"], 3);
    assert_eq!(v["trees"], 3);
    assert!(v.get("forests").is_none());

    // A single edge is a bridge, so its tree quotient is trivial.
    let e = temp_file(SINGLE_EDGE);
    let out = run(&[
        "series",
        e.path().to_str().unwrap(),
        "--algebra",
        "KT",
        "--json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["series"], serde_json::json!([1]));
    assert_eq!(v["trees"], 1);
}

#[test]
fn series_k_single_edge() {
    let e = temp_file(SINGLE_EDGE);
    let out = run(&[
        "series",
        e.path().to_str().unwrap(),
        "--algebra",
        "K",
        "--json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["series"], serde_json::json!([1, 1]));
    assert_eq!(v["forests"], 2);
}

#[test]
fn series_polynomial_file_matches_y_generators() {
    // The truncated exponential turns X generators into Y − 1, so the
    // filtered series coincides with the K series.
    let g = temp_file(TRIANGLE);
    let p = temp_file("# truncated exponential\n0, 1, 1/2, 1/6\n");
    let arg = format!("f:{}", p.path().to_str().unwrap());
    let out = run(&[
        "series",
        g.path().to_str().unwrap(),
        "--algebra",
        &arg,
        "--json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["series"], serde_json::json!([1, 3, 2, 1]));
}

#[test]
fn series_generic_reports_consensus() {
    let g = temp_file(TRIANGLE);
    let out = run(&[
        "series",
        g.path().to_str().unwrap(),
        "--algebra",
        "generic",
        "--json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["consensus"], true);
    assert_eq!(v["total"], 7);
}

#[test]
fn series_human_output_without_json_flag() {
    let g = temp_file(TRIANGLE);
    let out = run(&["series", g.path().to_str().unwrap(), "--algebra", "C"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("series: 1 + 2t + 3t^2 + t^3"));
    assert!(text.contains("total: 7"));
    assert!(text.contains("forests: 7"));
}

#[test]
fn check_passes_on_triangle_and_k4() {
    for graph in [TRIANGLE, K4] {
        let g = temp_file(graph);
        let out = run(&["check", g.path().to_str().unwrap()]);
        let v = stdout_json(&out);
        assert_eq!(v["all_pass"], true);
        assert_eq!(v["reconstruction_isomorphic"], true);
        assert_eq!(v["p_relations"]["entries"][0]["vanishes"], true);
    }
}

#[test]
fn check_skips_tree_suite_on_disconnected_graph() {
    let g = temp_file(DISCONNECTED);
    let out = run(&["check", g.path().to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["connected"], false);
    assert_eq!(v["tree_relations_skipped"], "graph is disconnected");
    assert!(v.get("tree_relations").is_none());
    assert_eq!(v["forest_series_matches_activity"], true);
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = run(&["series", "/no/such/file", "--algebra", "C"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_error_reports_line_number() {
    let g = temp_file("vertices 2\n0 5\n");
    let out = run(&["series", g.path().to_str().unwrap(), "--algebra", "C"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn edge_bound_env_var_controls_exit_code_three() {
    let g = temp_file(TRIANGLE);
    let out = galg(&["series", g.path().to_str().unwrap(), "--algebra", "C"])
        .env("GALG_MAX_EDGES", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // The exact edge count is admitted.
    let out = galg(&[
        "series",
        g.path().to_str().unwrap(),
        "--algebra",
        "C",
        "--json",
    ])
    .env("GALG_MAX_EDGES", "3")
    .output()
    .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = galg(&["series", g.path().to_str().unwrap(), "--algebra", "C"])
        .env("GALG_MAX_EDGES", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tree_algebra_of_disconnected_graph_is_rejected() {
    let g = temp_file(DISCONNECTED);
    let out = run(&["series", g.path().to_str().unwrap(), "--algebra", "CT"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("tree algebra requires connected graph"));
}

#[test]
fn unknown_algebra_is_a_usage_error() {
    let g = temp_file(TRIANGLE);
    let out = run(&["series", g.path().to_str().unwrap(), "--algebra", "Q"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn polynomial_with_constant_term_is_rejected() {
    let g = temp_file(TRIANGLE);
    let p = temp_file("1, 1\n");
    let arg = format!("f:{}", p.path().to_str().unwrap());
    let out = run(&["series", g.path().to_str().unwrap(), "--algebra", &arg]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tutte_json_counts_forests_and_trees() {
    let g = temp_file(TRIANGLE);
    let out = run(&["tutte", g.path().to_str().unwrap(), "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["polynomial"], "x^2 + x + y");
    assert_eq!(v["forests"], 7);
    assert_eq!(v["trees"], 3);
}

#[test]
fn reconstruct_round_trip_succeeds() {
    let g = temp_file(K4);
    let out = run(&["reconstruct", g.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["vertices"], 4);
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);
}

#[test]
fn reconstruct_rejects_isolated_vertices() {
    let g = temp_file("vertices 3\n0 1\n");
    let out = run(&["reconstruct", g.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not a consistent vertex-generator family"));
}

#[test]
fn search_small_case_finds_no_pairs() {
    let out = run(&[
        "search",
        "--vertices",
        "3",
        "--edges",
        "3",
        "--mode",
        "forest",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["graphs_examined"], 2);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 0);
}

#[test]
fn search_bounds_exit_with_code_three() {
    let out = run(&[
        "search",
        "--vertices",
        "9",
        "--edges",
        "3",
        "--mode",
        "forest",
    ]);
    assert_eq!(out.status.code(), Some(3));
}
