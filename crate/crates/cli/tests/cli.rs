//! End-to-end tests against the built binary: exit codes, text contracts,
//! JSON round-trips, and cache behavior.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use counterpoint_cli::report::Report;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_counterpoint"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

#[test]
fn polarity_classical_prints_t2_5() {
    let out = run(&[
        "polarity",
        "--modulus",
        "12",
        "--consonances",
        "0,3,4,7,8,9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("T^2.5"));
}

#[test]
fn polarity_contiguous_half_lists_both_candidates_and_exits_2() {
    let out = run(&["polarity", "--consonances", "0,1,2,3,4,5"]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("T^6.1"));
    assert!(text.contains("T^11.11"));
}

#[test]
fn odd_modulus_is_an_input_error() {
    let out = run(&["polarity", "--modulus", "13"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("even"), "stderr: {err}");
}

#[test]
fn dichotomies_lists_classical_pair_and_is_stable() {
    let out = run(&["dichotomies", "--modulus", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("{0,3,4,7,8,9} T^2.5"));

    let count1 = run(&["dichotomies", "--modulus", "12", "--count-only"]);
    let count2 = run(&["dichotomies", "--modulus", "12", "--count-only"]);
    assert_eq!(stdout(&count1), stdout(&count2));
    let count: usize = stdout(&count1)
        .lines()
        .last()
        .unwrap()
        .trim()
        .parse()
        .expect("count line is an integer");
    assert!(count > 0);
}

#[test]
fn dichotomies_mod_10_is_nonempty() {
    let out = run(&["dichotomies", "--modulus", "10", "--count-only"]);
    assert_eq!(out.status.code(), Some(0));
    let count: usize = stdout(&out).lines().last().unwrap().trim().parse().unwrap();
    assert!(count > 0);
}

#[test]
fn projections_cell_prints_published_matrix_and_oracle_matches() {
    let out = run(&["projections", "-y", "7", "-z", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("(7 0 0; 0 7 0)"));

    let out = run(&["projections", "-y", "7", "-z", "0", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("ORACLE MATCH"));
}

#[test]
fn projections_dissonant_downbeat_exits_2() {
    let out = run(&["projections", "-y", "2", "-z", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn successors_of_first_gradus_measure_contains_the_transition() {
    let out = run(&["successors", "--interval", "2,7,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("5+e1.4"));
}

#[test]
fn check_gradus_admits_everything() {
    let out = run(&["check", data("gradus.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("all 10 steps admitted"));
}

#[test]
fn check_note_form_agrees_with_interval_form() {
    let a = run(&["check", data("gradus.json").to_str().unwrap()]);
    let b = run(&["check", data("gradus_notes.json").to_str().unwrap()]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn check_mistakes_flags_both_steps_and_exits_2() {
    let out = run(&["check", data("gradus_mistakes.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("DissonantSourceDownbeat"));
    assert!(text.contains("DissonantTargetDownbeat"));
    assert!(text.contains("rejected steps: 1, 2"));
}

#[test]
fn check_empty_intervals_is_a_parse_error() {
    let out = run(&["check", data("empty.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn compare_case2_reports_published_cells() {
    let out = run(&["compare", "--case", "2", "--universe", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("total         2592"));
    assert!(text.contains("89.660%"));
    assert!(text.contains("MATCH"));
}

#[test]
fn compare_case1_emits_diff_with_json_record() {
    let out = run(&["compare", "--case", "1", "--universe", "all", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_str(&stdout(&out)).expect("valid report JSON");
    assert!(report.paper_diff.is_some());
    let diff = report.paper_diff.unwrap();
    assert!(!diff.matches);
    assert_eq!(diff.published.total, 1994);
}

#[test]
fn json_reports_round_trip() {
    for args in [
        vec!["polarity", "--json"],
        vec!["dichotomies", "--count-only", "--json"],
        vec!["projections", "-y", "7", "-z", "0", "--json"],
        vec!["successors", "--interval", "2,7,0", "--json"],
        vec!["compare", "--case", "2", "--json"],
    ] {
        let out = run(&args);
        let text = stdout(&out);
        let parsed: Report =
            serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        let re_emitted = serde_json::to_string_pretty(&parsed).unwrap();
        let re_parsed: Report = serde_json::from_str(&re_emitted).unwrap();
        assert_eq!(parsed, re_parsed, "{args:?}");
    }
}

#[test]
fn cache_round_trips_and_recovers_from_corruption() {
    let dir = std::env::temp_dir().join(format!("counterpoint-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cache = dir.join("table.cache");
    let cache_arg = cache.to_str().unwrap();

    // Cold run writes the cache.
    let cold = run(&["projections", "--all", "--json", "--cache", cache_arg]);
    assert_eq!(cold.status.code(), Some(0));
    assert!(cache.exists());

    // Warm run serves identical bytes from the cache.
    let warm = run(&["projections", "--all", "--json", "--cache", cache_arg]);
    assert_eq!(stdout(&cold), stdout(&warm));

    // A corrupted body is detected, reported, and recomputed.
    let raw = std::fs::read_to_string(&cache).unwrap();
    std::fs::write(&cache, raw.replace("\"max_score\":48", "\"max_score\":49")).unwrap();
    let recovered = run(&["projections", "--all", "--json", "--cache", cache_arg]);
    assert_eq!(recovered.status.code(), Some(0));
    let stderr = String::from_utf8(recovered.stderr.clone()).unwrap();
    assert!(stderr.contains("checksum"), "stderr: {stderr}");
    assert_eq!(stdout(&cold), stdout(&recovered));

    // A cache for a different consonance set is a miss. {0,1,2,3,4,6} is
    // strong (polarity T^11.11), so the command itself succeeds.
    let mismatched = bin()
        .args([
            "projections",
            "--all",
            "--json",
            "--consonances",
            "0,1,2,3,4,6",
            "--cache",
            cache_arg,
        ])
        .output()
        .unwrap();
    let stderr = String::from_utf8(mismatched.stderr.clone()).unwrap();
    assert_eq!(mismatched.status.code(), Some(0), "stderr: {stderr}");
    assert!(stderr.contains("header mismatch"), "stderr: {stderr}");

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_footer_echoes_the_bounds() {
    let out = run(&["projections", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("sweep: 72 cells"));
    assert!(text.contains("bounds [36, 66] (ok)"));
}

#[test]
fn compare_accepts_any_strong_dichotomy_without_reference_diff() {
    let out = run(&[
        "compare",
        "--case",
        "2",
        "--consonances",
        "0,1,2,3,4,6",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.paper_diff.is_none());
}

#[test]
fn check_rejects_a_composition_over_a_weak_dichotomy() {
    let dir = std::env::temp_dir().join(format!("counterpoint-weak-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("weak.json");
    std::fs::write(
        &path,
        r#"{"modulus":12, "consonances":[0,1,2,3,4,5], "intervals":[[0,3,1],[2,0]]}"#,
    )
    .unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("not a strong dichotomy"), "stderr: {stderr}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join(format!("counterpoint-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["polarity", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let written: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written.command, "polarity");
    std::fs::remove_dir_all(&dir).ok();
}
