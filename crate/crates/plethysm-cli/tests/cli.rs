//! End-to-end runs of the `pleth` binary: frozen outputs, exit codes,
//! file round-trips, and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn pleth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pleth"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("output is UTF-8")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("the process exits normally")
}

fn tmp(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(dir).expect("the target tmp dir exists");
    dir.join(name)
}

fn write_series(name: &str, truncation: u64, terms: &[(&[u64], &str)]) -> PathBuf {
    let terms: Vec<String> = terms
        .iter()
        .map(|(lambda, coeff)| {
            format!(
                "{{\"lambda\": {:?}, \"coeff\": \"{}\"}}",
                lambda, coeff
            )
        })
        .collect();
    let body = format!(
        "{{\"truncation\": {}, \"normalization\": \"f\", \"terms\": [{}]}}",
        truncation,
        terms.join(", ")
    );
    let path = tmp(name);
    std::fs::write(&path, body).expect("the file writes");
    path
}

fn series_f_terms(json: &str) -> Vec<(Vec<u64>, String)> {
    let value: serde_json::Value = serde_json::from_str(json).expect("series JSON parses");
    value["terms"]
        .as_array()
        .expect("terms is an array")
        .iter()
        .map(|term| {
            let lambda = term["lambda"]
                .as_array()
                .expect("lambda is an array")
                .iter()
                .map(|entry| entry.as_u64().expect("entries are small"))
                .collect();
            let coeff = term["coeff"].as_str().expect("fractions are strings").into();
            (lambda, coeff)
        })
        .collect()
}

#[test]
fn delta_of_the_unit_index() {
    let out = pleth(&["delta", "1"]);
    assert_eq!(exit_code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let terms = value["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["left"], serde_json::json!([[1]]));
    assert_eq!(terms[0]["right"], serde_json::json!([[1]]));
    assert_eq!(terms[0]["coeff"], "1");
}

#[test]
fn delta_of_a_single_size_two_part_has_two_terms() {
    let out = pleth(&["delta", "0,1"]);
    assert_eq!(exit_code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn delta_rejects_the_zero_index_and_garbage() {
    assert_eq!(exit_code(&pleth(&["delta", "0"])), 3);
    assert_eq!(exit_code(&pleth(&["delta", "x"])), 2);
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    assert_eq!(exit_code(&pleth(&[])), 2);
}

#[test]
fn substitution_matches_the_univariate_example() {
    let g = write_series("sub_g.json", 4, &[(&[2], "1")]);
    let f = write_series("sub_f.json", 4, &[(&[1], "1"), (&[2], "1")]);
    let out = pleth(&["plethysm", g.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let expected = vec![
        (vec![2], "1".to_string()),
        (vec![3], "3".to_string()),
        (vec![4], "3".to_string()),
    ];
    assert_eq!(series_f_terms(&stdout(&out)), expected);

    let composed = pleth(&["compose1", g.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(exit_code(&composed), 0);
    assert_eq!(series_f_terms(&stdout(&composed)), expected);
}

#[test]
fn substitution_into_the_identity_echoes() {
    let g = write_series("echo_g.json", 3, &[(&[1], "1")]);
    let f = write_series("echo_f.json", 3, &[(&[1], "2"), (&[0, 1], "-1/3")]);
    let out = pleth(&["plethysm", g.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        series_f_terms(&stdout(&out)),
        vec![
            (vec![1], "2".to_string()),
            (vec![0, 1], "-1/3".to_string()),
        ]
    );
}

#[test]
fn substitution_guards_its_preconditions() {
    let g = write_series("guard_g.json", 3, &[(&[1], "1")]);
    let with_constant = write_series("guard_const.json", 3, &[(&[], "1"), (&[1], "1")]);
    let out = pleth(&[
        "plethysm",
        g.to_str().unwrap(),
        with_constant.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 3);

    let other_window = write_series("guard_w.json", 4, &[(&[1], "1")]);
    let out = pleth(&["plethysm", g.to_str().unwrap(), other_window.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 3);

    let bad = tmp("guard_bad.json");
    std::fs::write(&bad, "not json").unwrap();
    let out = pleth(&["plethysm", g.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);

    let missing = tmp("guard_missing.json");
    let _ = std::fs::remove_file(&missing);
    let out = pleth(&["plethysm", g.to_str().unwrap(), missing.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn emitted_series_files_round_trip() {
    let g = write_series("round_g.json", 3, &[(&[2], "1"), (&[1, 1], "5/2")]);
    let f = write_series("round_f.json", 3, &[(&[1], "1"), (&[2], "-2")]);
    let first = tmp("round_out.json");
    let out = pleth(&[
        "plethysm",
        g.to_str().unwrap(),
        f.to_str().unwrap(),
        "--output",
        first.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);

    let id = write_series("round_id.json", 3, &[(&[1], "1")]);
    let echoed = pleth(&["plethysm", id.to_str().unwrap(), first.to_str().unwrap()]);
    assert_eq!(exit_code(&echoed), 0);
    let reread = std::fs::read_to_string(&first).unwrap();
    assert_eq!(stdout(&echoed), reread);
}

#[test]
fn bell_cofactor_example() {
    let out = pleth(&["bell", "3", "2", "--format", "text"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "3 * A(1)*A(2)\n");
    assert_eq!(exit_code(&pleth(&["bell", "0", "2"])), 3);
}

#[test]
fn placement_count_example() {
    let out = pleth(&["placements", "3", "2", "{(1),(2)}"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "2\n");
    assert_eq!(exit_code(&pleth(&["placements", "3", "2", "{(1),(2)"])), 2);
}

#[test]
fn partition_operations() {
    let pi = "[[1,2],[3]]";
    let tau = "[[1,3],[2]]";
    let join = pleth(&["partition", "join", pi, tau]);
    assert_eq!(exit_code(&join), 0);
    assert_eq!(stdout(&join), "[[1,2,3]]\n");

    let meet = pleth(&["partition", "meet", pi, tau]);
    assert_eq!(stdout(&meet), "[[1],[2],[3]]\n");

    let commute = pleth(&["partition", "commute", pi, tau]);
    assert_eq!(stdout(&commute), "false\n");

    let independent = pleth(&["partition", "independent", "[[1,3],[2,4]]", "[[1,2],[3,4]]"]);
    assert_eq!(stdout(&independent), "true\n");

    let transversal = pleth(&["partition", "transversal", "[[1,2,3]]", pi, tau]);
    assert_eq!(stdout(&transversal), "false\n");

    let crossed = pleth(&[
        "partition",
        "transversal",
        "[[1,2,3,4]]",
        "[[1,3],[2,4]]",
        "[[1,2],[3,4]]",
    ]);
    assert_eq!(stdout(&crossed), "true\n");

    assert_eq!(
        exit_code(&pleth(&["partition", "commute", pi, "[[4,5],[6]]"])),
        3
    );
    assert_eq!(exit_code(&pleth(&["partition", "commute", pi, "[[1,1],[2]]"])), 3);
    assert_eq!(exit_code(&pleth(&["partition", "commute", pi, "nope"])), 2);
}

#[test]
fn green_expansion_agrees_and_prints() {
    let out = pleth(&["green", "--truncation", "2", "--format", "text"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("A(1) (x) A(1)"));
    assert_eq!(exit_code(&pleth(&["green", "--truncation", "0"])), 3);
}

#[test]
fn verify_reports_and_exit_codes() {
    for suite in ["duality", "green", "objective", "partitions", "simplicial"] {
        let out = pleth(&[
            "verify",
            suite,
            "--truncation",
            "2",
            "--size-bound",
            "3",
            "--seed",
            "1",
        ]);
        assert_eq!(exit_code(&out), 0, "{suite} failed");
        let text = stdout(&out);
        assert!(text.lines().any(|line| line.starts_with("PASS ")), "{suite}");
        assert!(text.trim_end().ends_with("0 failed"), "{suite}");
    }
    assert_eq!(exit_code(&pleth(&["verify", "unknown"])), 2);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let first = pleth(&["delta", "4", "--format", "text"]);
    let second = pleth(&["delta", "4", "--format", "text"]);
    assert_eq!(first.stdout, second.stdout);

    let seeded_a = pleth(&["verify", "duality", "--truncation", "2", "--seed", "9"]);
    let seeded_b = pleth(&["verify", "duality", "--truncation", "2", "--seed", "9"]);
    assert_eq!(seeded_a.stdout, seeded_b.stdout);
}
