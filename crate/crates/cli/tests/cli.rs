//! End-to-end checks of the `braidforge` binary: the documented worked
//! examples, the exit-code contract, output formats, and determinism.

use std::process::{Command, Output};

use braidforge_core::suite::{claim_manifest, SuiteKind};
use serde_json::Value;

/// Run the binary with a clean environment so an ambient budget override
/// cannot perturb the tests.
fn braidforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidforge"))
        .args(args)
        .env_remove("BRAIDFORGE_BUDGET")
        .output()
        .expect("binary runs")
}

fn braidforge_with_budget_env(budget: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidforge"))
        .args(args)
        .env("BRAIDFORGE_BUDGET", budget)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process exits normally")
}

#[test]
fn normalize_combs_the_three_strand_full_twist() {
    let out = braidforge(&[
        "normalize",
        "--group",
        "P",
        "--n",
        "3",
        "A(1,2) A(1,3) A(2,3)",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "u3 = A(1,3) A(2,3); u2 = A(1,2)\n");
}

#[test]
fn apply_composes_band_inversion_with_the_flip() {
    let out = braidforge(&["apply", "--n", "4", "--auto", "t ; eps", "A(1,2)"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "A(1,2) z^-2\n");
}

#[test]
fn verify_paper_suite_at_four_strands_passes_in_json() {
    let out = braidforge(&["verify", "--suite", "paper", "--n", "4", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let claims = report["claims"].as_array().expect("claims array");
    assert!(!claims.is_empty());
    for claim in claims {
        let obj = claim.as_object().expect("claim object");
        assert!(obj.contains_key("claim_id"));
        assert!(obj.contains_key("n"));
        assert!(obj.contains_key("status"));
        assert!(obj.contains_key("elapsed"));
        let status = obj["status"].as_str().expect("status string");
        assert!(
            status == "pass" || status == "skipped",
            "unexpected status {status}"
        );
    }
    assert_eq!(report["summary"]["fail"].as_u64(), Some(0));
    let pass = report["summary"]["pass"].as_u64().expect("pass count");
    assert!(pass > 0);
}

#[test]
fn normalize_splits_a_braid_into_coset_and_combed_pure_part() {
    let out = braidforge(&["normalize", "--group", "B", "--n", "3", "s1 s2 s1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "permutation: [3 2 1]\ncoset: s1 s2 s1\npure: u3 = 1; u2 = 1\n"
    );

    let out = braidforge(&["normalize", "--group", "B", "--n", "3", "s1^2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "permutation: [1 2 3]\ncoset: 1\npure: u3 = 1; u2 = A(1,2)\n"
    );
}

#[test]
fn parse_prints_canonical_reduced_spellings() {
    let out = braidforge(&[
        "parse",
        "--group",
        "P",
        "--n",
        "4",
        "A(1,2) z^2 A(1,2)^-1 z^-1",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "z\n");

    let out = braidforge(&["parse", "--group", "B", "--n", "4", "s1 s2 s2^-1 s1^-1 s3"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "s3\n");

    let out = braidforge(&["parse", "--group", "F2", "x1 x1^-1 x2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "x2\n");
}

#[test]
fn usage_problems_exit_with_code_two() {
    let cases: &[&[&str]] = &[
        &["normalize", "--bogus"],
        &["normalize", "--group", "P", "A(1,2)"],
        &["parse", "--group", "B", "--n", "3", "s9"],
        &["apply", "--n", "4", "--auto", "nosuchmap", "A(1,2)"],
        &["verify", "--n", "0"],
        &["verify", "--n", "5..3"],
        &["verify", "--suite", "nosuchsuite"],
    ];
    for args in cases {
        let out = braidforge(args);
        assert_eq!(exit_code(&out), 2, "args {args:?} should exit 2");
    }
}

#[test]
fn budget_exhaustion_exits_with_code_three() {
    let word = "A(1,4) A(2,4) A(1,4)^-1 A(3,4) A(1,3)";
    let out = braidforge(&[
        "normalize",
        "--group",
        "P",
        "--n",
        "4",
        "--budget",
        "3",
        word,
    ]);
    assert_eq!(exit_code(&out), 3);

    let out = braidforge_with_budget_env("3", &["normalize", "--group", "P", "--n", "4", word]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn explicit_budget_flag_overrides_the_environment() {
    let word = "A(1,4) A(2,4) A(1,4)^-1 A(3,4) A(1,3)";
    let out = braidforge_with_budget_env(
        "3",
        &[
            "normalize",
            "--group",
            "P",
            "--n",
            "4",
            "--budget",
            "200000",
            word,
        ],
    );
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "u4 = A(1,4) A(2,4) A(1,4)^-1 A(3,4); u3 = A(1,3); u2 = 1\n"
    );
}

#[test]
fn starved_verify_reports_failures_and_exits_with_code_one() {
    let out = braidforge(&[
        "verify", "--suite", "props", "--n", "3", "--budget", "1", "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 1);
    let report: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let failed = report["summary"]["fail"].as_u64().expect("fail count");
    assert!(failed > 0);
}

/// Strip the wall-clock field so reruns can be compared on semantic content.
fn mask_elapsed(mut report: Value) -> Value {
    for claim in report["claims"].as_array_mut().expect("claims array") {
        claim["elapsed"] = Value::Null;
    }
    report
}

#[test]
fn verify_verdicts_are_deterministic_across_runs() {
    let args = ["verify", "--suite", "props", "--n", "3", "--format", "json"];
    let first: Value = serde_json::from_str(&stdout(&braidforge(&args))).expect("valid JSON");
    let second: Value = serde_json::from_str(&stdout(&braidforge(&args))).expect("valid JSON");
    assert_eq!(mask_elapsed(first), mask_elapsed(second));
}

#[test]
fn verify_reports_every_manifest_instance_in_order() {
    let out = braidforge(&["verify", "--suite", "all", "--n", "2", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let reported: Vec<(String, u64)> = report["claims"]
        .as_array()
        .expect("claims array")
        .iter()
        .map(|c| {
            (
                c["claim_id"].as_str().expect("id").to_string(),
                c["n"].as_u64().expect("n"),
            )
        })
        .collect();
    let expected: Vec<(String, u64)> = claim_manifest()
        .iter()
        .flat_map(|spec| {
            spec.strand_counts
                .iter()
                .map(|&n| (spec.id.to_string(), u64::from(n)))
        })
        .collect();
    assert_eq!(reported, expected);
}

#[test]
fn verify_selects_a_single_suite() {
    let out = braidforge(&["verify", "--suite", "paper", "--n", "2", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let paper_ids: Vec<&str> = claim_manifest()
        .iter()
        .filter(|spec| spec.kind == SuiteKind::Paper)
        .map(|spec| spec.id)
        .collect();
    for claim in report["claims"].as_array().expect("claims array") {
        let id = claim["claim_id"].as_str().expect("id");
        assert!(
            paper_ids.contains(&id),
            "claim {id} is not in the paper family"
        );
    }
}

#[test]
fn json_mirrors_carry_stable_fields() {
    let out = braidforge(&[
        "apply", "--n", "4", "--auto", "t ; eps", "--format", "json", "A(1,2)",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["group"].as_str(), Some("P"));
    assert_eq!(report["n"].as_u64(), Some(4));
    assert_eq!(report["auto"].as_str(), Some("t ; eps"));
    assert_eq!(report["input"].as_str(), Some("A(1,2)"));
    assert_eq!(report["image"].as_str(), Some("A(1,2) z^-2"));

    let out = braidforge(&[
        "normalize",
        "--group",
        "P",
        "--n",
        "3",
        "--format",
        "json",
        "A(1,2) A(1,3) A(2,3)",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["group"].as_str(), Some("P"));
    assert_eq!(report["n"].as_u64(), Some(3));
    let components = report["components"].as_array().expect("components array");
    assert_eq!(components.len(), 2);
    assert_eq!(components[0]["column"].as_u64(), Some(3));
    assert_eq!(components[0]["word"].as_str(), Some("A(1,3) A(2,3)"));
    assert_eq!(components[1]["column"].as_u64(), Some(2));
    assert_eq!(components[1]["word"].as_str(), Some("A(1,2)"));

    let out = braidforge(&[
        "normalize",
        "--group",
        "B",
        "--n",
        "3",
        "--format",
        "json",
        "s1 s2",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["permutation"], serde_json::json!([3, 1, 2]));
    assert_eq!(report["coset"].as_str(), Some("s1 s2"));
}

#[test]
fn apply_accepts_rank_two_words_without_a_strand_count() {
    let out = braidforge(&["apply", "--group", "F2", "--auto", "rho", "x1 x2^-1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "x2 x1^-1\n");

    let out = braidforge(&["apply", "--group", "F2", "--auto", "nu ; rho", "x1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "x2 x1\n");
}

#[test]
fn identity_words_normalize_to_one() {
    let out = braidforge(&["normalize", "--group", "P", "--n", "4", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "u4 = 1; u3 = 1; u2 = 1\n");

    let out = braidforge(&["parse", "--group", "B", "--n", "3", "s1 s1^-1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "1\n");
}
