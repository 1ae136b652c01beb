use std::io::Write;

use momentkit_cli::{run, Status};
use serde_json::Value;

fn run_json(args: &[&str]) -> (Value, i32) {
    let mut argv: Vec<&str> = args.to_vec();
    argv.push("--json");
    let (report, code) = run(argv);
    (serde_json::from_str(&report.to_json()).unwrap(), code)
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("momentkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path)
        .unwrap()
        .write_all(body.as_bytes())
        .unwrap();
    path
}

const THIN: &str = r#"{"dim": 2, "halfspaces": [
    {"normal": ["1","0"], "offset": "0"},
    {"normal": ["0","1"], "offset": "0"},
    {"normal": ["-2","-1"], "offset": "-2"}]}"#;

#[test]
fn validate_standard_triangle() {
    let (v, code) = run_json(&["validate", "simplex:2:1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["simple"], true);
    assert_eq!(v["result"]["smooth"], true);
    assert_eq!(v["polytope"]["vertices"], 3);
}

#[test]
fn validate_thin_triangle_reports_vertex_and_det() {
    let path = temp_file("thin.json", THIN);
    let (v, code) = run_json(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["smooth"], false);
    assert_eq!(v["result"]["vertex"], serde_json::json!(["1", "0"]));
    assert_eq!(v["result"]["det"], "2");
}

#[test]
fn count_reports_oracle_twin() {
    let (v, code) = run_json(&["count", "hirzebruch:1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], v["oracle"]["count"]);
    assert_eq!(v["result"]["count"], 5);
    let (v, code) = run_json(&["count", "simplex:2:3", "--box", "-2..9,-1..4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 10);
}

#[test]
fn count_box_errors() {
    let (v, code) = run_json(&["count", "simplex:2:3", "--box", "0..1,0..1"]);
    assert_eq!(code, 3, "{v}");
    let (_, code) = run_json(&["count", "simplex:2:3", "--box", "0..5"]);
    assert_eq!(code, 2);
    let (_, code) = run_json(&["count", "simplex:2:3", "--box", "garbage"]);
    assert_eq!(code, 2);
}

#[test]
fn volume_with_retry_and_oracle() {
    let (v, code) = run_json(&["volume", "cube:2:3", "--xi", "1,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["retried"], true);
    assert_eq!(v["result"]["volume"], "9");
    assert_eq!(v["oracle"]["volume"], "9");
    let (v, code) = run_json(&["volume", "simplex:3:1", "--xi", "3,5,7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["volume"], "1/6");
    assert_eq!(v["result"]["retried"], false);
}

#[test]
fn non_delzant_is_a_domain_error() {
    let path = temp_file("thin2.json", THIN);
    for cmd in ["volume", "betti"] {
        let (v, code) = run_json(&[cmd, path.to_str().unwrap()]);
        assert_eq!(code, 3, "{cmd}: {v}");
        assert_eq!(v["status"], "domain-error");
    }
}

#[test]
fn empty_and_unbounded_are_domain_errors() {
    let empty = temp_file(
        "empty.json",
        r#"{"dim": 1, "halfspaces": [{"normal": ["1"], "offset": "1"}, {"normal": ["-1"], "offset": "0"}]}"#,
    );
    let unbounded = temp_file(
        "unbounded.json",
        r#"{"dim": 1, "halfspaces": [{"normal": ["1"], "offset": "0"}]}"#,
    );
    for p in [empty, unbounded] {
        let (_, code) = run_json(&["validate", p.to_str().unwrap()]);
        assert_eq!(code, 3);
    }
}

#[test]
fn usage_errors() {
    assert_eq!(run(["frobnicate"]).1, 2);
    assert_eq!(run(["volume"]).1, 2);
    assert_eq!(run(["volume", "simplex:2:1", "--xi", "1,2,3"]).1, 2);
    assert_eq!(run(["volume", "simplex:2:1", "--xi", "a,b"]).1, 2);
    assert_eq!(run(["gkm-dim", "simplex:2:1"]).1, 2);
    let (r, code) = run(["--help"]);
    assert_eq!(code, 0);
    assert!(r.render().contains("decompose"));
}

#[test]
fn decompose_lists_cones() {
    let (v, code) = run_json(&["decompose", "simplex:2:1", "--xi", "1,2"]);
    assert_eq!(code, 0);
    let cones = v["result"]["cones"].as_array().unwrap();
    assert_eq!(cones.len(), 3);
    let signs: Vec<i64> = cones.iter().map(|c| c["sign"].as_i64().unwrap()).collect();
    // vertices (0,0), (0,1), (1,0); only (1,0) has an edge pairing positively with xi
    assert_eq!(signs, vec![1, 1, -1]);
    assert_eq!(
        v["result"]["signed_lattice_count"],
        v["oracle"]["lattice_count"]
    );
    let (_, code) = run_json(&["decompose", "simplex:2:1", "--xi", "1,1"]);
    assert_eq!(code, 3);
}

#[test]
fn betti_and_gkm_dim() {
    let (v, code) = run_json(&["betti", "hirzebruch:2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["betti"], serde_json::json!([1, 2, 1]));
    let (v, code) = run_json(&["gkm-dim", "cube:2:1", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dimension"], 8);
    assert_eq!(v["oracle"]["free_module_prediction"], 8);
}

#[test]
fn gkm_check_and_integrate_with_class_files() {
    // x on every vertex: a constant class
    let constant = temp_file(
        "x.json",
        r#"{"0": {"1,0": "1"}, "1": {"1,0": "1"}, "2": {"1,0": "1"}}"#,
    );
    let (v, code) = run_json(&[
        "gkm-check",
        "simplex:2:1",
        "--class",
        constant.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["ok"], true);
    let (v, code) = run_json(&[
        "integrate",
        "simplex:2:1",
        "--class",
        constant.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["value"], "0");

    let bad = temp_file("bad.json", r#"{"0": {"1,0": "1"}}"#);
    let (v, code) = run_json(&["gkm-check", "simplex:2:1", "--class", bad.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["ok"], false);
    let (_, code) = run_json(&["integrate", "simplex:2:1", "--class", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
}

#[test]
fn integrate_top_degree_is_direction_independent() {
    // x^2 on CP^2 pushes forward to a constant; check against a second point
    let sq = temp_file(
        "xx.json",
        r#"{"0": {"2,0": "1"}, "1": {"2,0": "1"}, "2": {"2,0": "1"}}"#,
    );
    let (v, code) = run_json(&[
        "integrate",
        "simplex:2:1",
        "--class",
        sq.to_str().unwrap(),
        "--seed",
        "4",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["value"], v["oracle"]["value"]);
}

#[test]
fn moment_graph_input() {
    let g = momentkit_core::MomentGraph::from_polytope(
        &momentkit_core::Polytope::hirzebruch(1).unwrap(),
    )
    .unwrap();
    let path = temp_file("graph.json", &momentkit_core::io::moment_graph_to_json(&g));
    let (v, code) = run_json(&["betti", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["betti"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["polytope"]["facets"], Value::Null);
    let (_, code) = run_json(&["volume", path.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn catalog_lists_builders() {
    let (v, code) = run_json(&["catalog"]);
    assert_eq!(code, 0);
    let items = v["result"].as_array().unwrap();
    assert_eq!(items.len(), 21);
    assert!(items.iter().any(|i| i["spec"] == "hirzebruch:3"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["decompose", "cube:3:2", "--seed", "9", "--json"][..],
        &["volume", "hirzebruch:3", "--json"],
        &["count", "simplex:3:2"],
    ] {
        let a = run(args.to_vec()).0.render();
        let b = run(args.to_vec()).0.render();
        assert_eq!(a, b);
    }
}

#[test]
fn status_codes() {
    assert_eq!(Status::Ok.exit_code(), 0);
    assert_eq!(Status::UsageError.exit_code(), 2);
    assert_eq!(Status::DomainError.exit_code(), 3);
    assert_eq!(Status::OracleMismatch.exit_code(), 4);
}
