//! End-to-end tests driving the built binary.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plumb-bounds"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn bounds_trefoil_json() {
    let out = run(&["bounds", "--braid", "1 1 1", "--format", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["best"]["bk"], 2);
    assert_eq!(v["best"]["fp"], 4);
    assert_eq!(v["best"]["fpbk"], 4);
    assert_eq!(v["genus"]["exact_bk"], 2);
    assert_eq!(v["input"]["kind"], "braid");
}

#[test]
fn bounds_known_figure2_min_bound() {
    let out = run(&[
        "bounds",
        "--known",
        "figure2",
        "--fpbk-policy",
        "min-bound",
        "--format",
        "json",
    ]);
    let v = stdout_json(&out);
    let bounds = v["bounds"].as_array().unwrap();
    let fpbk = bounds
        .iter()
        .find(|b| b["name"] == "fpbk_diagram")
        .unwrap();
    assert_eq!(fpbk["value"], 6);
    let refined = bounds.iter().find(|b| b["name"] == "fp_refined").unwrap();
    assert_eq!(refined["value"], 6);
    assert_eq!(v["flags"]["fpbk_policy_ambiguity"], true);
}

#[test]
fn text_and_json_agree_on_values() {
    let json = stdout_json(&run(&["bounds", "--known", "trefoil", "--format", "json"]));
    let text_out = run(&["bounds", "--known", "trefoil", "--format", "text"]);
    assert!(text_out.status.success());
    let text = String::from_utf8(text_out.stdout).unwrap();
    for bound in json["bounds"].as_array().unwrap() {
        let line = text
            .lines()
            .find(|l| l.contains(bound["name"].as_str().unwrap()))
            .unwrap_or_else(|| panic!("no text line for {}", bound["name"]));
        assert!(
            line.contains(&format!("<= {}", bound["value"])),
            "line `{line}` lacks value {}",
            bound["value"]
        );
    }
    assert!(text.contains("best:  bk <= 2   fp <= 4   fpbk <= 4"));
}

#[test]
fn json_output_is_deterministic() {
    let a = run(&["bounds", "--known", "figure2", "--format", "json"]);
    let b = run(&["bounds", "--known", "figure2", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn disconnected_input_exits_one() {
    let out = run(&[
        "bounds", "--braid", "1", "--strands", "3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "disconnected");
}

#[test]
fn braid_starting_with_negative_letter() {
    // The negative Hopf link: alternating closure, so bk is exact.
    let out = run(&["bounds", "--braid", "-1 -1", "--format", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["genus"]["exact_bk"], 1);
    assert!(v["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .all(|b| b["name"] != "bk_braid"));
}

#[test]
fn bad_braid_token_exits_one() {
    let out = run(&["bounds", "--braid", "1 0 1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("braid-parse"));
}

#[test]
fn unknown_fixture_exits_one() {
    let out = run(&["bounds", "--known", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_input_flag_exits_one() {
    let out = run(&["bounds"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lemma_check_summary() {
    let out = run(&["lemma-check", "--random", "50", "--seed", "7"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("50/50 passed"), "got: {text}");
}

#[test]
fn lemma_check_json() {
    let out = run(&[
        "lemma-check", "--random", "25", "--seed", "3", "--format", "json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["total"], 25);
    assert_eq!(v["passed"], 25);
}

#[test]
fn batch_isolates_failures() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, content: &str| {
        let path = dir.path().join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        path
    };
    let braid = write("a.txt", "1 1 1\n");
    let pd = write("b.txt", "X[2,3,4,1] X[3,5,6,4] X[5,2,1,6]\n");
    let graph = write(
        "c.json",
        r#"{"s": 2, "l": 2, "edges": [[1, 2, 1], [1, 2, 1]]}"#,
    );
    let broken = write("d.txt", "1 0 2\n");
    let missing = dir.path().join("missing.txt");

    let out = run(&[
        "batch",
        braid.to_str().unwrap(),
        pd.to_str().unwrap(),
        graph.to_str().unwrap(),
        broken.to_str().unwrap(),
        missing.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 5);
    assert_eq!(items[0]["report"]["best"]["bk"], 2);
    assert_eq!(items[1]["report"]["input"]["kind"], "pd");
    assert_eq!(items[1]["report"]["best"]["bk"], 2);
    assert_eq!(items[2]["report"]["input"]["kind"], "graph");
    assert_eq!(items[2]["report"]["best"]["bk"], 1);
    assert_eq!(items[3]["error"]["code"], "braid-parse");
    assert_eq!(items[4]["error"]["code"], "io");
}

#[test]
fn batch_empty_is_empty_array() {
    let out = run(&["batch"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "[]");
}

#[test]
fn fixtures_listing() {
    let out = run(&["fixtures"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["unknot", "hopf", "trefoil", "figure8", "figure2"] {
        assert!(text.contains(name), "missing {name}");
    }

    let v = stdout_json(&run(&["fixtures", "--format", "json"]));
    assert!(v.as_array().unwrap().len() >= 11);
}

#[test]
fn pd_input_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trefoil.pd");
    std::fs::write(&path, "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
    let out = run(&[
        "bounds", "--pd", path.to_str().unwrap(), "--format", "json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["input"]["kind"], "pd");
    assert_eq!(v["best"]["bk"], 2);
    assert_eq!(v["genus"]["reason"], "alternating-diagram");
}

#[test]
fn graph_input_with_assert_minimal() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(
        &path,
        r#"{"s": 2, "l": 1, "edges": [[1, 2, 1], [1, 2, 1], [1, 2, 1]]}"#,
    )
    .unwrap();
    let out = run(&[
        "bounds",
        "--graph",
        path.to_str().unwrap(),
        "--assert-minimal-genus",
        "--format",
        "json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["genus"]["exact_bk"], 2);
    assert_eq!(v["genus"]["reason"], "user-asserted");
}

#[test]
fn unknot_marker_is_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.pd");
    std::fs::write(&path, "U").unwrap();
    let out = run(&[
        "bounds", "--pd", path.to_str().unwrap(), "--format", "json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["best"]["fpbk"], 0);
    assert_eq!(v["flags"]["possibly_trivial"], true);
}
