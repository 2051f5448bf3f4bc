//! End-to-end tests of the command-line surface: pipelines, exit codes,
//! JSON report shapes and file handling.

use ryser_cli::{run_cli, EXIT_FINDING, EXIT_IO, EXIT_OK, EXIT_USAGE};
use serde_json::Value;
use std::io::Cursor;

fn run_env(args: &[&str], stdin_text: &str, workers_env: Option<&str>) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("ryser")
        .chain(args.iter().copied())
        .map(str::to_string)
        .collect();
    let mut stdin = Cursor::new(stdin_text.as_bytes().to_vec());
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = run_cli(&argv, &mut stdin, &mut stdout, &mut stderr, workers_env);
    (
        code,
        String::from_utf8(stdout).expect("stdout is UTF-8"),
        String::from_utf8(stderr).expect("stderr is UTF-8"),
    )
}

fn run(args: &[&str], stdin_text: &str) -> (i32, String, String) {
    run_env(args, stdin_text, None)
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("stdout is valid JSON")
}

#[test]
fn pipeline_fano_complement_verify_is_clean() {
    let (code, fano_doc, _) = run(&["generate", "fano"], "");
    assert_eq!(code, EXIT_OK);

    let (code, derived_doc, _) = run(&["complement", "--block", "0"], &fano_doc);
    assert_eq!(code, EXIT_OK);

    let (code, report, _) = run(&["verify", "--json"], &derived_doc);
    assert_eq!(code, EXIT_OK);
    let v = json(&report);
    assert_eq!(v["kind"], "ryser");
    assert_eq!(v["v"], 7);
    assert_eq!(v["lambda"], 2);
    assert_eq!(v["r1"], 5);
    assert_eq!(v["r2"], 3);
    assert_eq!(v["e1"], 3);
    assert_eq!(v["e2"], 4);
    assert_eq!(v["rho"], "2/1");
    assert_eq!(v["c"], 2);
    assert_eq!(v["d"], 1);
    assert_eq!(v["g"], 2);
    assert_eq!(v["a"], 1);
    assert_eq!(v["big_d"], 0);
    assert_eq!(v["reciprocal_sum_lhs"], "4/1");
    assert_eq!(v["reciprocal_sum_rhs"], "4/1");
    assert_eq!(v["clean"], true);
}

#[test]
fn verify_of_symmetric_seed_is_clean() {
    let (_, doc, _) = run(&["generate", "paley", "11"], "");
    let (code, report, _) = run(&["verify", "--json"], &doc);
    assert_eq!(code, EXIT_OK);
    let v = json(&report);
    assert_eq!(v["kind"], "symmetric");
    assert_eq!(v["v"], 11);
    assert_eq!(v["k"], 5);
    assert_eq!(v["lambda_prime"], 2);
}

#[test]
fn duplicate_blocks_fail_at_parse_time() {
    let text = r#"{"format_version": 1, "v": 3, "blocks": [[0, 1], [2], [0, 1]]}"#;
    let (code, _, err) = run(&["verify"], text);
    assert_eq!(code, EXIT_IO);
    assert!(err.contains("blocks 0 and 2 are identical"), "stderr: {err}");
}

#[test]
fn nonconstant_intersection_is_a_verification_failure() {
    let text = r#"{"format_version": 1, "v": 4, "blocks": [[0, 1], [1, 2], [2, 3], [0, 1, 2]]}"#;
    let (code, out, _) = run(&["verify"], text);
    assert_eq!(code, EXIT_FINDING);
    assert!(out.contains("not a design"), "stdout: {out}");
}

#[test]
fn undersized_block_is_a_verification_failure() {
    // Constant intersection 1, but the first block has size 1 = lambda.
    let text = r#"{"format_version": 1, "v": 4, "blocks": [[0], [0, 1], [0, 2], [0, 3]]}"#;
    let (code, out, _) = run(&["verify"], text);
    assert_eq!(code, EXIT_FINDING);
    assert!(out.contains("clean: no"), "stdout: {out}");
}

#[test]
fn malformed_json_is_a_parse_error() {
    let (code, _, err) = run(&["verify"], "{ this is not json");
    assert_eq!(code, EXIT_IO);
    assert!(err.contains("malformed document"), "stderr: {err}");
}

#[test]
fn missing_input_file_is_an_io_error() {
    let (code, _, err) = run(&["verify", "--in", "/no/such/file.json"], "");
    assert_eq!(code, EXIT_IO);
    assert!(err.contains("/no/such/file.json"), "stderr: {err}");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let (code, _, err) = run(&["frobnicate"], "");
    assert_eq!(code, EXIT_USAGE);
    assert!(!err.is_empty());
}

#[test]
fn help_prints_to_stdout_and_exits_zero() {
    let (code, out, _) = run(&["--help"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("equiv-class"));
    assert!(out.contains("analyze-two-size"));
}

#[test]
fn generate_seeds_verify_as_symmetric() {
    for args in [
        vec!["generate", "fano"],
        vec!["generate", "pg2", "3"],
        vec!["generate", "paley", "11"],
        vec!["generate", "diffset", "11", "5", "2"],
    ] {
        let (code, doc, _) = run(&args, "");
        assert_eq!(code, EXIT_OK, "generate failed for {args:?}");
        let (code, report, _) = run(&["verify", "--json"], &doc);
        assert_eq!(code, EXIT_OK, "verify failed for {args:?}");
        assert_eq!(json(&report)["kind"], "symmetric", "{args:?}");
    }
}

#[test]
fn generate_diffset_miss_is_a_finding() {
    // No cyclic (16, 6, 2) difference set exists.
    let (code, _, err) = run(&["generate", "diffset", "16", "6", "2"], "");
    assert_eq!(code, EXIT_FINDING);
    assert!(err.contains("no cyclic"), "stderr: {err}");
}

#[test]
fn unsupported_generator_parameters_are_usage_errors() {
    let (code, _, _) = run(&["generate", "pg2", "9"], "");
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = run(&["generate", "paley", "10"], "");
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn complement_out_of_range_block_is_a_finding() {
    let (_, doc, _) = run(&["generate", "fano"], "");
    let (code, _, err) = run(&["complement", "--block", "99"], &doc);
    assert_eq!(code, EXIT_FINDING);
    assert!(!err.is_empty());
}

#[test]
fn out_flag_writes_a_parseable_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fano.json");
    let path_str = path.to_str().unwrap();
    let (code, out, _) = run(&["generate", "fano", "--out", path_str], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty(), "nothing goes to stdout when --out is given");

    let (code, report, _) = run(&["verify", "--json", "--in", path_str], "");
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&report)["kind"], "symmetric");
}

#[test]
fn emitted_class_members_all_reverify() {
    let (_, fano_doc, _) = run(&["generate", "fano"], "");
    let (_, derived, _) = run(&["complement", "--block", "0"], &fano_doc);

    let dir = tempfile::tempdir().unwrap();
    let dir_str = dir.path().to_str().unwrap();
    let (code, report, _) = run(&["equiv-class", "--json", "--emit-members", dir_str], &derived);
    assert_eq!(code, EXIT_OK);
    let v = json(&report);
    assert_eq!(v["size"], 8);
    assert_eq!(v["symmetric_members"], 1);

    let mut paths: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    assert_eq!(paths.len(), 8);
    for path in paths {
        let (code, _, err) = run(&["verify", "--in", path.to_str().unwrap()], "");
        assert_eq!(code, EXIT_OK, "member {path:?} failed verify: {err}");
    }
}

#[test]
fn json_reports_are_valid_json_everywhere() {
    let (_, fano_doc, _) = run(&["generate", "fano"], "");
    let (_, derived, _) = run(&["complement", "--block", "0"], &fano_doc);
    for subcommand in [
        "verify",
        "profile",
        "equiv-class",
        "is-type1",
        "check-h",
        "even-block",
        "analyze-two-size",
    ] {
        let (_, out, err) = run(&[subcommand, "--json"], &derived);
        assert!(
            serde_json::from_str::<Value>(&out).is_ok(),
            "{subcommand} stdout is not JSON: {out} (stderr: {err})"
        );
    }
    let (_, out, _) = run(&["search", "--v", "6", "--lambda", "1", "--json"], "");
    assert!(serde_json::from_str::<Value>(&out).is_ok());
    let (_, out, _) = run(&["scan", "--v-max", "5", "--lambda-max", "1", "--json"], "");
    assert!(serde_json::from_str::<Value>(&out).is_ok());
}

#[test]
fn search_reports_the_unique_cell_design() {
    let (code, out, _) = run(&["search", "--v", "7", "--lambda", "2", "--json"], "");
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["designs"].as_array().unwrap().len(), 1);
    assert_eq!(v["type2_candidates"], 0);
    assert_eq!(v["completed"], true);
    assert_eq!(v["designs"][0]["type1"], true);
    assert_eq!(v["designs"][0]["block_sizes"][0], 3);
}

#[test]
fn scan_to_v7_is_clean() {
    let (code, out, _) = run(&["scan", "--v-max", "7", "--lambda-max", "2", "--json"], "");
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["type2_total"], 0);
    assert_eq!(v["completed"], true);
}

#[test]
fn zero_second_budget_marks_the_run_incomplete() {
    let (code, out, _) = run(
        &["search", "--v", "7", "--lambda", "2", "--budget", "0", "--json"],
        "",
    );
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["completed"], false);
}

#[test]
fn search_cap_violation_is_a_usage_error() {
    let (code, _, err) = run(&["search", "--v", "40", "--lambda", "1"], "");
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cap"), "stderr: {err}");
}

#[test]
fn workers_env_is_used_and_garbage_is_warned() {
    let (code, out, _) = run_env(
        &["search", "--v", "7", "--lambda", "2", "--json"],
        "",
        Some("2"),
    );
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["designs"].as_array().unwrap().len(), 1);

    let (code, _, err) = run_env(
        &["search", "--v", "6", "--lambda", "1"],
        "",
        Some("a lot"),
    );
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("RYSER_WORKERS"), "stderr: {err}");
}

#[test]
fn explicit_workers_flag_beats_the_environment() {
    let (code, out, _) = run_env(
        &["search", "--v", "7", "--lambda", "2", "--workers", "1", "--json"],
        "",
        Some("4"),
    );
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["completed"], true);
}

#[test]
fn profile_of_a_symmetric_design_is_a_finding() {
    let (_, fano_doc, _) = run(&["generate", "fano"], "");
    let (code, _, err) = run(&["profile"], &fano_doc);
    assert_eq!(code, EXIT_FINDING);
    assert!(err.contains("Ryser"), "stderr: {err}");
}

#[test]
fn is_type1_on_symmetric_input_is_a_finding() {
    let (_, fano_doc, _) = run(&["generate", "fano"], "");
    let (code, _, _) = run(&["is-type1"], &fano_doc);
    assert_eq!(code, EXIT_FINDING);
}

#[test]
fn generated_documents_reserialize_byte_identically() {
    let (_, doc_text, _) = run(&["generate", "pg2", "3"], "");
    let (_, parsed) = ryser_cli::format::parse(&doc_text).unwrap();
    assert_eq!(ryser_cli::format::serialize(&parsed), doc_text);
}

#[test]
fn complement_carries_provenance_metadata() {
    let (_, fano_doc, _) = run(&["generate", "fano"], "");
    let (_, derived, _) = run(&["complement", "--block", "2"], &fano_doc);
    let (_, doc) = ryser_cli::format::parse(&derived).unwrap();
    let meta = doc.metadata.expect("complement writes metadata");
    assert_eq!(meta.seed.as_deref(), Some("complemented at block 2"));
    assert_eq!(meta.name.as_deref(), Some("fano * block 2"));
}
