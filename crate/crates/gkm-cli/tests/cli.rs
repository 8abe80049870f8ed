//! End-to-end tests of the `gkm` binary: every subcommand, the documented
//! exit codes, and byte-identical reruns.

use std::process::{Command, Output};
use std::sync::Arc;

use gkm_core::cohomology::class_tau;
use gkm_core::gkmgraph::{build_family, Family};
use gkm_core::poly::Polynomial;
use gkm_core::ring::Ring;
use gkm_core::Limits;

fn gkm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gkm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn graph_dot_lists_all_vertices_and_edges() {
    let out = gkm(&["graph", "--family", "A", "--n", "3"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("graph {"));
    assert_eq!(text.matches(" -- ").count(), 9);
    for name in ["123", "132", "213", "231", "312", "321"] {
        assert!(text.contains(&format!("\"{}\";", name)));
    }
    assert!(text.contains("[label=\"t1-t2\"]"));
}

#[test]
fn graph_doubles_the_label_on_the_long_root_family() {
    let out = gkm(&["graph", "--family", "C", "--n", "1"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("[label=\"2t1\"]"));
    let out = gkm(&["graph", "--family", "B", "--n", "1"]);
    assert!(stdout_of(&out).contains("[label=\"t1\"]"));
}

#[test]
fn graph_rejects_rank_one_d() {
    let out = gkm(&["graph", "--family", "D", "--n", "1"]);
    assert_eq!(code_of(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank at least 2"));
}

#[test]
fn graph_from_explicit_roots() {
    let out = gkm(&[
        "graph",
        "--roots",
        "1,-1;1,1;0,2;2,0",
        "--format",
        "json",
    ]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
    assert_eq!(v["edges"].as_array().unwrap().len(), 16);
}

#[test]
fn graph_needs_exactly_one_input_source() {
    let out = gkm(&["graph", "--family", "A", "--n", "2", "--roots", "1,-1"]);
    assert_eq!(code_of(&out), 2);
    let out = gkm(&["graph", "--family", "A"]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn rank_table_matches_closed_form_on_a3() {
    let out = gkm(&["rank", "--family", "A", "--n", "3", "--max-degree", "3"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("recurrence"));
    assert!(text.contains("29"));
    assert!(text.contains("all_match: true"));
}

#[test]
fn rank_reports_the_span_index_over_int_on_c() {
    let out = gkm(&[
        "rank", "--family", "C", "--n", "2", "--max-degree", "3", "--ring", "Int", "--format",
        "json",
    ]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["all_match"], serde_json::json!(true));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows[2]["span_index"], serde_json::json!("1"));
    assert_eq!(rows[3]["span_index"], serde_json::json!("2"));
    // the free rank still matches; only the generated sublattice is strict
    assert_eq!(rows[3]["computed"], serde_json::json!(16));
}

#[test]
fn verify_passes_where_the_presentation_holds() {
    let out = gkm(&["verify", "--family", "A", "--n", "2"]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["verified"], serde_json::json!(true));

    let out = gkm(&["verify", "--family", "C", "--n", "2", "--max-degree", "3"]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["ring"], serde_json::json!("Dyadic"));
    assert_eq!(v["verified"], serde_json::json!(true));
}

#[test]
fn verify_fails_for_c_over_the_integers() {
    let out = gkm(&[
        "verify", "--family", "C", "--n", "2", "--max-degree", "3", "--ring", "Int",
    ]);
    assert_eq!(code_of(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["verified"], serde_json::json!(false));
    assert!(String::from_utf8_lossy(&out.stderr).contains("index 2"));
}

#[test]
fn reduce_recovers_a_generator() {
    let limits = Limits::default();
    let g = Arc::new(build_family(Family::A, 3, &limits).unwrap());
    let tau1 = class_tau(&g, 1).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tau1.json");
    std::fs::write(&path, serde_json::to_string(&tau1.to_json()).unwrap()).unwrap();

    let out = gkm(&[
        "reduce",
        "--family",
        "A",
        "--n",
        "3",
        "--class",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["output"]["pretty"], serde_json::json!("tau1"));
}

#[test]
fn reduce_rejects_non_members_naming_an_edge() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let t1 = Polynomial::var(Ring::Int, 2, 0);
    let zero = Polynomial::zero(Ring::Int, 2);
    let class = serde_json::json!({
        "degree": 2,
        "ring": "Int",
        "values": {"12": t1.to_json(), "21": zero.to_json()},
    });
    std::fs::write(&path, serde_json::to_string(&class).unwrap()).unwrap();

    let out = gkm(&[
        "reduce",
        "--family",
        "A",
        "--n",
        "2",
        "--class",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("not a cohomology class"));
    assert!(err.contains("12") && err.contains("21"));
}

#[test]
fn reduce_insists_on_the_right_ring() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("any.json");
    std::fs::write(&path, "{}").unwrap();
    let out = gkm(&[
        "reduce", "--family", "C", "--n", "2", "--class",
        path.to_str().unwrap(), "--ring", "Int",
    ]);
    assert_eq!(code_of(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Dyadic"));
}

#[test]
fn counterexample_prints_its_three_assertions() {
    let out = gkm(&["counterexample"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains(
        "member over Z: yes; in Z-span of {tau,t}: no; \
         equals (1/2)(tau1-t2)(tau2-t2)(tau1-tau2+t1+t2): yes"
    ));
    assert!(!text.contains("2h in Z-span"));

    let out = gkm(&["counterexample", "--check-double"]);
    assert!(stdout_of(&out).contains("2h in Z-span of {tau,t}: yes"));
}

#[test]
fn counterexample_class_file_feeds_back_into_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cex.json");
    let out = gkm(&["counterexample", "--emit-class", path.to_str().unwrap()]);
    assert_eq!(code_of(&out), 0);

    let out = gkm(&[
        "reduce",
        "--family",
        "C",
        "--n",
        "2",
        "--class",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["ring"], serde_json::json!("Dyadic"));
    // a genuinely half-integral coefficient must survive in the output
    assert!(v["output"]["pretty"]
        .as_str()
        .unwrap()
        .contains("(1/2^1)"));
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        vec!["rank", "--family", "B", "--n", "2", "--max-degree", "3"],
        vec!["graph", "--family", "D", "--n", "2", "--format", "json"],
        vec!["verify", "--family", "B", "--n", "2", "--max-degree", "2"],
        vec!["counterexample"],
    ] {
        let a = gkm(&args);
        let b = gkm(&args);
        assert_eq!(a.stdout, b.stdout, "stdout drifted for {:?}", args);
        assert_eq!(code_of(&a), code_of(&b));
    }
}
