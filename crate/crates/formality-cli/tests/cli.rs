//! Black-box tests of the `formality` binary: exit codes, output contracts,
//! and the cache round trip, all through `std::process::Command`.

use std::path::Path;
use std::process::{Command, Output};

fn formality(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formality"))
        .args(args)
        .output()
        .expect("spawn formality")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn check_reports_the_verdict_in_both_formats() {
    let human = formality(&["check", "--n", "6", "--blocks", "3,3", "--route", "both"]);
    assert_eq!(code(&human), 0, "stderr: {}", stderr(&human));
    let text = stdout(&human);
    assert!(text.contains("SU(6)/SU(3)xSU(3)"), "{text}");
    assert!(text.contains("verdict: non-formal"), "{text}");
    assert!(text.contains("deficiency = 1"), "{text}");
    assert!(text.contains("certified-exact"), "{text}");
    assert!(text.contains("route torus"), "{text}");
    assert!(text.contains("route invariants"), "{text}");

    let json = formality(&["check", "--n", "6", "--blocks", "3,3", "--route", "both", "--json"]);
    assert_eq!(code(&json), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).expect("valid JSON");
    assert_eq!(doc["space"], "SU(6)/SU(3)xSU(3)");
    assert_eq!(doc["m"], 4);
    assert_eq!(doc["r"], 5);
    assert_eq!(doc["deficiency"], 1);
    assert_eq!(doc["verdict"], "non-formal");
    assert_eq!(doc["certification"], "certified-exact");
    assert_eq!(doc["routes"].as_array().unwrap().len(), 2);
    let per_degree = doc["routes"][0]["per_degree"].as_array().unwrap();
    assert_eq!(per_degree.len(), 5);
    assert!(doc["timings"]["total_ms"].is_u64());
}

#[test]
fn bad_inputs_exit_one() {
    let out = formality(&["check", "--n", "6", "--blocks", "3,2"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("sum to 5"), "{}", stderr(&out));

    let out = formality(&["check", "--n", "1"]);
    assert_eq!(code(&out), 1);

    let out = formality(&["check", "--n", "4", "--blocks", "2,2", "--prime", "1000000000"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("not prime"), "{}", stderr(&out));

    let out = formality(&["check", "--n", "4", "--blocks", "nope"]);
    assert_eq!(code(&out), 1);

    let out = formality(&["no-such-command"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn help_and_version_exit_zero() {
    let out = formality(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("check"));

    let out = formality(&["--version"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn budget_refusal_exits_two() {
    let out = formality(&[
        "check", "--n", "6", "--blocks", "3,3", "--mode", "exact", "--max-columns", "3",
    ]);
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("column budget"), "{}", stderr(&out));

    let out = formality(&[
        "membership", "--n", "12", "--blocks", "4,4,4", "--target", "5", "--basis", "2,3",
        "--max-columns", "2",
    ]);
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
}

#[test]
fn modular_mode_reports_monte_carlo_certification() {
    let out = formality(&[
        "check", "--n", "4", "--blocks", "2,2", "--mode", "modular", "--prime", "2147483629",
        "--json",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["verdict"], "formal");
    assert_eq!(doc["certification"], "modular-monte-carlo");
    assert_eq!(doc["routes"][0]["per_degree"][0]["modulus"], 2147483629u64);
}

#[test]
fn cache_replays_stored_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["check", "--n", "4", "--blocks", "2,2", "--json", "--cache-dir", cache];

    let cold = formality(&args);
    assert_eq!(code(&cold), 0);
    assert!(!stderr(&cold).contains("cache hit"));
    assert_eq!(count_records(dir.path()), 1);

    let warm = formality(&args);
    assert_eq!(code(&warm), 0);
    assert!(stderr(&warm).contains("cache hit"), "{}", stderr(&warm));
    assert_eq!(stdout(&warm), stdout(&cold), "warm run must replay stored bytes");

    // The record stores both renderings: a human-format request hits too.
    let human_args = ["check", "--n", "4", "--blocks", "2,2", "--cache-dir", cache];
    let warm_human = formality(&human_args);
    assert_eq!(code(&warm_human), 0);
    assert!(stderr(&warm_human).contains("cache hit"));
    assert!(stdout(&warm_human).contains("verdict: formal"));
    assert_eq!(count_records(dir.path()), 1);

    // A different problem misses and adds a second record.
    let other = formality(&[
        "check", "--n", "4", "--blocks", "2,2", "--route", "both", "--json", "--cache-dir", cache,
    ]);
    assert_eq!(code(&other), 0);
    assert!(!stderr(&other).contains("cache hit"));
    assert_eq!(count_records(dir.path()), 2);

    // Corrupt records are ignored, recomputed, and rewritten.
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(entry.unwrap().path(), b"junk {").unwrap();
    }
    let recovered = formality(&args);
    assert_eq!(code(&recovered), 0);
    assert!(!stderr(&recovered).contains("cache hit"));
    assert_eq!(stdout(&recovered), stdout(&cold));
}

fn count_records(dir: &Path) -> usize {
    std::fs::read_dir(dir)
        .map(|entries| entries.filter_map(Result::ok).count())
        .unwrap_or(0)
}

#[test]
fn verify_paper_passes_and_reports_every_claim() {
    let out = formality(&["verify-paper"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    for label in [
        "Corollary 2.4",
        "Example 3.1 (q=3)",
        "Example 3.1 (q=5)",
        "Theorem 3.3 (q=3, n=2)",
        "Theorem 3.3 (q=3, n=3)",
        "Theorem 3.3 (q=5, n=2)",
        "Lemma 3.4 / Theorem 3.5 (n=2)",
        "Lemma 3.4 / Theorem 3.5 (n=3)",
    ] {
        assert!(text.contains(label), "missing row {label}:\n{text}");
    }
    assert_eq!(text.matches("PASS").count(), 8, "{text}");
    assert!(text.contains("8 rows: 8 passed, 0 failed, 0 skipped"), "{text}");
}

#[test]
fn verify_paper_budget_skips_exit_two() {
    let out = formality(&["verify-paper", "--max-columns", "10"]);
    assert_eq!(code(&out), 2);
    let text = stdout(&out);
    assert!(text.contains("SKIPPED"), "{text}");
    assert!(text.contains("over the exact limit of 10"), "{text}");
    assert_eq!(text.matches("FAIL").count(), 0, "{text}");
}

#[test]
fn verify_paper_corrupt_hook_fails_exit_one() {
    let out = formality(&["verify-paper", "--corrupt-generator"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert_eq!(text.matches("FAIL").count(), 1, "{text}");
    assert!(
        text.contains("membership reported MEMBER for the degree-4 target"),
        "the failing row must name the divergent value:\n{text}"
    );
}

#[test]
fn eigen_membership_partition_match_their_contracts() {
    let out = formality(&["eigen", "--n", "4", "--k", "1", "--poly", "P2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0\n");

    let out = formality(&["eigen", "--n", "4", "--k", "1", "--poly", "P4]"]);
    assert_eq!(code(&out), 1, "garbled generator name must be rejected");

    let out = formality(&["eigen", "--n", "4", "--k", "1", "--poly", "p4"]);
    assert_eq!(stdout(&out), "-1\n");

    let out = formality(&[
        "membership", "--n", "12", "--blocks", "4,4,4", "--target", "5", "--basis", "2,3",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("NON-MEMBER\n"), "{}", stdout(&out));

    let out = formality(&["membership", "--n", "6", "--blocks", "3,3", "--target", "4", "--basis", "2,4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("MEMBER\n"), "{text}");
    assert!(text.contains("(1)*p4"), "{text}");

    let out = formality(&["partition", "--n", "4", "--k", "1", "--sizes", "2,2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "[[0,2],[1,3]]\n");

    let out = formality(&["partition", "--n", "3", "--k", "1", "--sizes", "2,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "none exists\n");

    let out = formality(&["partition", "--n", "4", "--k", "1", "--sizes", "3,3"]);
    assert_eq!(code(&out), 1, "sizes must sum to n");
}

#[test]
fn embedding_files_drive_the_torus_route() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("embedding.json");

    std::fs::write(&path, r#"[[1], [1], [-2]]"#).unwrap();
    let out = formality(&["check", "--n", "3", "--embedding", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["space"], "SU(3)/T^1");
    assert_eq!(doc["m"], 1);
    assert_eq!(doc["deficiency"], 0);
    assert_eq!(doc["routes"][0]["route"], "torus");

    // Rational entries as strings; this is a relabeled full torus of SU(3).
    std::fs::write(&path, r#"[[1, "1/2"], [0, "-1/2"], [-1, 0]]"#).unwrap();
    let out = formality(&["check", "--n", "3", "--embedding", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["space"], "SU(3)/T");
    assert_eq!(doc["deficiency"], 0);

    // Ragged and float-bearing matrices are rejected.
    std::fs::write(&path, r#"[[1], [1, 0], [-2]]"#).unwrap();
    let out = formality(&["check", "--n", "3", "--embedding", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("inconsistent"), "{}", stderr(&out));

    std::fs::write(&path, r#"[[0.5], [0.5], [-1.0]]"#).unwrap();
    let out = formality(&["check", "--n", "3", "--embedding", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("1/2"), "{}", stderr(&out));

    let out = formality(&["check", "--n", "3", "--embedding", "/no/such/file.json"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn full_torus_is_the_default_subgroup() {
    let out = formality(&["check", "--n", "5", "--json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["space"], "SU(5)/T");
    assert_eq!(doc["subgroup"]["kind"], "torus");
    assert_eq!(doc["m"], 4);
    assert_eq!(doc["r"], 4);
    assert_eq!(doc["verdict"], "formal");
}
