use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn simploc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simploc")).args(args).env_remove("SIMPLOC_BUDGET").output().expect("binary runs")
}

fn with_fixture(args: &[&str], name: &str) -> Output {
    let path = fixture(name);
    let mut all: Vec<&str> = args.to_vec();
    all.push(path.to_str().unwrap());
    simploc(&all)
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("report is JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn outcome(r: &Value, i: usize) -> &str {
    r["verdicts"][i]["outcome"].as_str().unwrap()
}

#[test]
fn left_fibration_check_on_the_slice_projection() {
    let out = with_fixture(&["check", "--kind", "left", "--bound", "3"], "slice_projection.ssx");
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(outcome(&r, 0), "yes");
    assert_eq!(r["parameters"]["bound"], 3);
    assert!(r["verdicts"][0]["scope"].as_str().unwrap().contains("dimension 3"));
    assert_eq!(r["inputs"][0]["kind"], "smap");
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn horn_is_not_a_left_fibration_over_the_simplex() {
    let out = with_fixture(&["check", "--kind", "left", "--bound", "2"], "horn1_2.ssx");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(outcome(&report(&out), 0), "no");
}

#[test]
fn homology_of_the_boundary() {
    let out = with_fixture(&["homology", "--max-degree", "2"], "boundary2.ssx");
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let groups = &r["results"]["homology"]["groups"];
    assert_eq!(groups[0], "Z");
    assert_eq!(groups[1], "Z");
    assert_eq!(groups[2], "0");
}

#[test]
fn homology_of_a_map_reports_the_comparison() {
    let out = with_fixture(&["homology", "--max-degree", "2"], "horn0_2.ssx");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(outcome(&report(&out), 0), "yes");
}

#[test]
fn cofinality_modes() {
    for mode in ["auto", "definition", "theorem-a", "joyal"] {
        let out = with_fixture(&["cofinal", "--mode", mode], "horn0_2.ssx");
        assert_eq!(out.status.code(), Some(0), "mode {mode}");
        let out = with_fixture(&["cofinal", "--mode", mode], "vertex1_in_edge.ssx");
        assert_eq!(out.status.code(), Some(1), "mode {mode}");
    }
    // {1} is left cofinal in Δ[1]
    let out = with_fixture(&["cofinal", "--left"], "vertex1_in_edge.ssx");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn covariant_equivalence() {
    let (one, zero, id) = (fixture("vertex1_in_edge.ssx"), fixture("vertex0_in_edge.ssx"), fixture("id_edge.ssx"));
    let run = |f: &PathBuf| {
        let f = f.to_str().unwrap();
        simploc(&["cov-equiv", f, "--source-over", f, "--target-over", id.to_str().unwrap()])
    };
    assert_eq!(run(&zero).status.code(), Some(0));
    assert_eq!(run(&one).status.code(), Some(1));
}

#[test]
fn localize_writes_the_localization_map() {
    let dir = std::env::temp_dir().join(format!("simploc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("l.ssx");
    let out = with_fixture(&["localize", "--j-trunc", "2", "--output", target.to_str().unwrap()], "marked_edge.ssx");
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["counts"], serde_json::json!([2, 2, 2]));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(written["kind"], "smap");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn delocalization_replacement_and_reedy() {
    let out = with_fixture(&["delocalize-verify", "--j-trunc", "2"], "boundary2.ssx");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["parameters"]["variant"], "nondegenerate");
    let out = with_fixture(&["replace"], "horn0_2.ssx");
    assert_eq!(out.status.code(), Some(0));
    let out = with_fixture(&["replace", "--variant", "full:1"], "id_edge.ssx");
    assert_eq!(out.status.code(), Some(0));
    let out = with_fixture(&["reedy", "--bound", "2", "--strong"], "dstar_edge.ssx");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let strip = |out: Output| {
        let mut r = report(&out);
        r.as_object_mut().unwrap().remove("elapsed_ms");
        serde_json::to_string(&r).unwrap()
    };
    let args = ["cofinal", "--mode", "joyal"];
    assert_eq!(strip(with_fixture(&args, "horn1_2.ssx")), strip(with_fixture(&args, "horn1_2.ssx")));
}

#[test]
fn usage_and_load_errors_exit_3() {
    assert_eq!(with_fixture(&["check", "--kind", "left", "--frobnicate"], "slice_projection.ssx").status.code(), Some(3));
    assert_eq!(with_fixture(&["localize"], "marked_edge.ssx").status.code(), Some(3));
    assert_eq!(simploc(&["homology", "--max-degree", "1", "/nonexistent.ssx"]).status.code(), Some(3));
    assert_eq!(with_fixture(&["reedy", "--bound", "2"], "boundary2.ssx").status.code(), Some(3));
    assert_eq!(with_fixture(&["replace", "--variant", "bogus"], "id_edge.ssx").status.code(), Some(3));
    assert_eq!(simploc(&["accept", "11"]).status.code(), Some(3));
}

fn with_stdin(args: &[&str], input: &str, env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_simploc"));
    cmd.args(args).env_remove("SIMPLOC_BUDGET").stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    if let Some(e) = env {
        cmd.env("SIMPLOC_BUDGET", e);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn dangling_faces_are_load_errors() {
    let doc = r#"{"format":"ssx","version":1,"kind":"sset",
        "generators":[{"id":"a","dim":0,"faces":[]},{"id":"e","dim":1,"faces":["a","b"]}]}"#;
    let out = with_stdin(&["homology", "--max-degree", "1", "-"], doc, None);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("`e`") && err.contains("1"), "{err}");
}

#[test]
fn truncated_inputs_need_an_explicit_bound() {
    let doc = r#"{"format":"ssx","version":1,"kind":"sset","truncation":1,
        "generators":[{"id":"a","dim":0,"faces":[]},{"id":"e","dim":1,"faces":["a","a"]}]}"#;
    assert_eq!(with_stdin(&["check", "--kind", "kan", "-"], doc, None).status.code(), Some(3));
    let out = with_stdin(&["check", "--kind", "kan", "--bound", "1", "-"], doc, None);
    assert_ne!(out.status.code(), Some(3));
}

#[test]
fn budget_environment_variable() {
    let doc = std::fs::read_to_string(fixture("horn0_2.ssx")).unwrap();
    let out = with_stdin(&["cofinal", "--mode", "definition", "-"], &doc, Some("cosets=77,max_cells=5"));
    let r = report(&out);
    assert_eq!(r["parameters"]["budget"]["cosets"], 77);
    assert_eq!(r["parameters"]["budget"]["max_cells"], 5);
    let out = with_stdin(&["cofinal", "--cosets", "12", "-"], &doc, Some("cosets=77"));
    assert_eq!(report(&out)["parameters"]["budget"]["cosets"], 12);
    assert_eq!(with_stdin(&["cofinal", "-"], &doc, Some("cosets=lots")).status.code(), Some(3));
}

#[test]
fn accept_runs_selected_criteria() {
    let out = simploc(&["accept", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["criteria"][0]["criterion"], 9);
    assert_eq!(r["results"]["criteria"][0]["passed"], true);
}
