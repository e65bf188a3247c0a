use std::path::{Path, PathBuf};
use std::process::Command as Process;

use clap::Parser;
use subshift_core::cli::report::{Row, RunReport};
use subshift_core::cli::{self, Cli};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("subshift").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    Run { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn jsonl(args: &[&str]) -> (i32, RunReport) {
    let mut full = vec!["--format", "jsonl"];
    full.extend_from_slice(args);
    let r = run(&full);
    let report = RunReport::from_jsonl(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stderr));
    (r.code, report)
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const MILLER_FIVE: &str = r#"{"alphabet_size": 2, "terms": [
  {"kappa": 1, "rho": 1, "degree": 0, "n_start": 5, "size_slope": 1, "size_offset": 0, "finite": false}
]}"#;

fn bound_row(report: &RunReport) -> subshift_core::cli::report::BoundRow {
    match &report.results[0] {
        Row::Bound(b) => b.clone(),
        other => panic!("unexpected row {other:?}"),
    }
}

#[test]
fn bound_reproduces_binary_word_constant() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", MILLER_FIVE);
    let (code, report) = jsonl(&["bound", s(&p), "--mode=z"]);
    assert_eq!(code, 0);
    let b = bound_row(&report);
    assert!((b.solution.beta_star - 1.754878).abs() < 1e-6);

    let human = run(&["bound", s(&p), "--mode", "z"]);
    assert_eq!(human.code, 0);
    assert!(human.stdout.contains("1.754877"), "{}", human.stdout);
    assert!(human.stdout.contains("entropy (ln)") && human.stdout.contains("entropy (log2)"));
}

#[test]
fn bound_empty_profile_is_alphabet() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", r#"{"alphabet_size": 3, "terms": []}"#);
    let (code, report) = jsonl(&["bound", s(&p)]);
    assert_eq!(code, 0);
    assert_eq!(bound_row(&report).solution.beta_star, 3.0);
}

#[test]
fn bound_divergent_profile_exits_3() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "p.json",
        r#"{"alphabet_size": 2, "terms": [{"kappa": 1, "rho": 4, "degree": 0, "n_start": 1, "size_slope": 2, "size_offset": 0, "finite": false}]}"#,
    );
    let r = run(&["bound", s(&p)]);
    assert_eq!(r.code, 3);
    assert!(r.stdout.contains("series never converges below alphabet size"), "{}", r.stdout);
}

#[test]
fn bound_input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", "{\"alphabet_size\": 2,\n \"terms\": [{\"kappa\": 1}]}");
    let r = run(&["bound", s(&p)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);

    let p = write(&dir, "q.json", r#"{"alphabet_size": 1, "terms": []}"#);
    let r = run(&["bound", s(&p)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("alphabet_size"), "{}", r.stderr);

    assert_eq!(run(&["bound", "/nonexistent/profile.json"]).code, 2);
    assert_eq!(run(&["bound", s(&p), "--mode", "weird"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn bound_flags() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", r#"{"alphabet_size": 10, "terms": [{"kappa": 1, "rho": 1, "degree": 0, "n_start": 2, "size_slope": 1, "size_offset": 0, "finite": true}]}"#);
    let (_, plain) = jsonl(&["bound", s(&p), "--mode=z"]);
    let (_, strict) = jsonl(&["bound", s(&p), "--mode=z", "--strict"]);
    let (_, wide) = jsonl(&["bound", s(&p), "--mode=z", "--strict=0.5"]);
    let b0 = bound_row(&plain).solution.beta_star;
    let b1 = bound_row(&strict).solution.beta_star;
    let b2 = bound_row(&wide).solution.beta_star;
    assert!(b0 >= b1 && b1 > b2, "{b0} {b1} {b2}");
    assert_eq!(run(&["bound", s(&p), "--strict=-1"]).code, 2);

    let r = run(&["bound", s(&p), "--log-base=2"]);
    assert!(r.stdout.contains("entropy (log2)") && !r.stdout.contains("entropy (ln)"));
    let (code, _) = jsonl(&["bound", s(&p), "--mode=custom:1,0.5"]);
    assert_eq!(code, 0);
}

fn oracle_row(report: &RunReport) -> subshift_core::cli::report::OracleRow {
    match &report.results[0] {
        Row::Oracle(o) => o.clone(),
        other => panic!("unexpected row {other:?}"),
    }
}

#[test]
fn oracle_golden_mean() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "w.json", r#"{"alphabet_size": 2, "forbidden_words": ["11"]}"#);
    let (code, report) = jsonl(&["oracle", s(&p), "--nmax=8"]);
    assert_eq!(code, 0);
    let o = oracle_row(&report);
    assert!((o.report.spectral_radius - 1.618034).abs() < 1e-6);
    assert!((o.solution.unwrap().beta_star - 1.0).abs() < 1e-6);
    assert!((o.soundness_gap.unwrap() - 0.618034).abs() < 1e-6);
    assert_eq!(o.report.counts, vec![2, 3, 5, 8, 13, 21, 34, 55]);
}

#[test]
fn oracle_full_shift_and_fixed_beta() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "w.json", r#"{"alphabet_size": 2, "forbidden_words": []}"#);
    let (_, report) = jsonl(&["oracle", s(&p)]);
    let o = oracle_row(&report);
    assert!((o.report.spectral_radius - 2.0).abs() < 1e-12);
    assert_eq!(o.solution.unwrap().beta_star, 2.0);
    assert!(o.soundness_gap.unwrap().abs() < 1e-12);

    let g = write(&dir, "g.json", r#"{"alphabet_size": 2, "forbidden_words": ["11"]}"#);
    let (_, report) = jsonl(&["oracle", s(&g), "--beta=1.7"]);
    let o = oracle_row(&report);
    assert!(o.solution.is_none());
    assert!(o.report.ratio_ok.iter().any(|&b| !b));
    assert_eq!(run(&["oracle", s(&g), "--beta=abc"]).code, 2);
    assert_eq!(run(&["oracle", s(&g), "--nmax=0"]).code, 2);
}

#[test]
fn oracle_dead_shift_warns() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "w.json", r#"{"alphabet_size": 2, "forbidden_words": ["00", "01", "10", "11"]}"#);
    let (code, report) = jsonl(&["oracle", s(&p)]);
    assert_eq!(code, 0);
    assert_eq!(oracle_row(&report).report.spectral_radius, 0.0);
    assert!(report.warnings.iter().any(|w| w.contains("no cycle")));
}

#[test]
fn oracle_input_errors() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "w.json", r#"{"alphabet_size": 2, "forbidden_words": ["12"]}"#);
    assert_eq!(run(&["oracle", s(&p)]).code, 2);
}

fn binary() -> Process {
    Process::new(env!("CARGO_BIN_EXE_subshift"))
}

#[test]
fn state_cap_from_environment_exits_4() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "w.json", r#"{"alphabet_size": 3, "forbidden_words": ["0120120"]}"#);
    let out = binary().args(["oracle", s(&p)]).env("SUBSHIFT_MAX_STATES", "100").output().unwrap();
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
    let out = binary().args(["oracle", s(&p)]).env("SUBSHIFT_MAX_STATES", "1000").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = binary().args(["oracle", s(&p)]).env("SUBSHIFT_MAX_STATES", "lots").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn binary_exit_codes_match_in_process_runs() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", MILLER_FIVE);
    let out = binary().args(["bound", s(&p), "--mode=z"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = binary().args(["bound", s(&p)]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = binary().args(["bound", "/nonexistent"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn paper_thm9_rows() {
    let (code, report) = jsonl(&["paper", "--section=thm9"]);
    assert_eq!(code, 0);
    assert_eq!(report.results.len(), 4);
    for row in &report.results {
        let Row::Table(t) = row else { panic!("{row:?}") };
        assert!(t.diff.unwrap() <= 1e-6, "{t:?}");
    }
}

#[test]
fn paper_thm5_rows() {
    let (code, report) = jsonl(&["paper", "--section=thm5"]);
    assert_eq!(code, 0);
    assert_eq!(report.results.len(), 6);
}

#[test]
fn paper_aperiodic() {
    let r = run(&["paper", "--section=aperiodic"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("C=11, beta=1.9: holds"), "{}", r.stdout);
    assert!(r.stdout.contains("C=10, beta=1.9: fails"));
}

#[test]
fn paper_nonrep_reports_the_failing_rows() {
    let (code, report) = jsonl(&["paper", "--section=nonrep"]);
    let rows: Vec<_> = report
        .results
        .iter()
        .filter_map(|r| if let Row::Nonrepetitive(b) = r { Some(b.clone()) } else { None })
        .collect();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows.iter().map(|b| b.s).collect::<Vec<_>>(), (2..=10).collect::<Vec<_>>());
    let all_hold = rows.iter().all(|b| b.holds);
    assert_eq!(code, if all_hold { 0 } else { 1 });
}

#[test]
fn paper_kolmogorov_and_thm8() {
    assert_eq!(run(&["paper", "--section=kolmogorov"]).code, 0);
    let (code, report) = jsonl(&["paper", "--section=thm8"]);
    assert_eq!(code, 0);
    assert!(report.results.iter().any(|r| matches!(r, Row::Theorem8Suite(s) if s.violations.is_empty())));
    assert_eq!(run(&["paper", "--section=thm10"]).code, 2);
}

fn pavlov_row(report: &RunReport) -> subshift_core::applications::PavlovComparison {
    match &report.results[0] {
        Row::Pavlov(p) => p.clone(),
        other => panic!("unexpected row {other:?}"),
    }
}

#[test]
fn compare_pavlov_examples() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"alphabet_size": 3, "terms": [{"kappa": 1, "rho": 1, "degree": 0, "n_start": 2, "size_slope": 1, "size_offset": 0, "finite": false}]}"#);
    let (code, report) = jsonl(&["compare-pavlov", s(&a)]);
    assert_eq!(code, 0);
    let p = pavlov_row(&report);
    assert_eq!(p.pavlov.k_best, 0);
    assert!((p.solution.beta_star - 2.0).abs() < 1e-9);

    let b = write(&dir, "b.json", r#"{"alphabet_size": 10, "terms": [{"kappa": 1, "rho": 1, "degree": 0, "n_start": 2, "size_slope": 1, "size_offset": 0, "finite": true}]}"#);
    let (code, report) = jsonl(&["compare-pavlov", s(&b)]);
    assert_eq!(code, 0);
    let p = pavlov_row(&report);
    assert_eq!(p.pavlov.k_best, 8);
    assert!((p.solution.beta_star - 9.899).abs() < 1e-3);

    let c = write(&dir, "c.json", r#"{"alphabet_size": 5, "terms": []}"#);
    let (_, report) = jsonl(&["compare-pavlov", s(&c)]);
    let p = pavlov_row(&report);
    assert_eq!((p.pavlov.k_best, p.solution.beta_star), (4, 5.0));
}

/// Every command's JSONL output re-parses to the in-memory report and is
/// byte-identical across runs.
#[test]
fn round_trip_and_determinism() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", MILLER_FIVE);
    let w = write(&dir, "w.json", r#"{"alphabet_size": 3, "forbidden_words": ["00", "121", "2"]}"#);
    let cases: Vec<Vec<&str>> = vec![
        vec!["bound", s(&p), "--mode=z"],
        vec!["bound", s(&p)],
        vec!["oracle", s(&w), "--nmax=20"],
        vec!["paper", "--section=thm5"],
        vec!["paper", "--section=thm9"],
        vec!["paper", "--section=aperiodic"],
        vec!["paper", "--section=nonrep"],
        vec!["paper", "--section=kolmogorov"],
        vec!["paper", "--section=thm8"],
        vec!["compare-pavlov", s(&p)],
    ];
    for args in cases {
        let mut full = vec!["subshift", "--format", "jsonl"];
        full.extend(args.iter().copied());
        let first = run(&full[1..]);
        let second = run(&full[1..]);
        assert_eq!(first.stdout, second.stdout, "{args:?}");

        let parsed = Cli::try_parse_from(&full).unwrap();
        let in_memory = cli::execute(&parsed.command).unwrap().report;
        assert_eq!(RunReport::from_jsonl(&first.stdout).unwrap(), in_memory, "{args:?}");
    }
}
