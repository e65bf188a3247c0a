//! The `subshift` command line.

mod render;
pub mod report;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::applications::aperiodic::{self, AperiodicQuery};
use crate::applications::kolmogorov::{kolmogorov_constant, kolmogorov_grid, KolmogorovQuery};
use crate::applications::nonrepetitive::{lemma5_chain, nonrepetitive_min_alphabet, nonrepetitive_paper_bound};
use crate::applications::pavlov::compare_pavlov;
use crate::applications::tables::{section_table, Section};
use crate::applications::theorem8::{theorem8_bound, theorem8_suite, Theorem8Case};
use crate::error::Error;
use crate::oracle::{profile_of, run_oracle, TransferAutomaton, WordSet, DEFAULT_MAX_STATES};
use crate::series::{SizeProfile, WeightMode};
use crate::solver::{solve_beta, ConditionMode, LogBase};
use report::{
    digest_inputs, AppendixRow, BoundRow, KolmogorovGridRow, KolmogorovRow, OracleRow, Row, RunReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;
pub const EXIT_PAVLOV: i32 = 5;

pub const MAX_STATES_ENV: &str = "SUBSHIFT_MAX_STATES";

/// Soundness slack between β* and the transfer-matrix growth.
const SOUNDNESS_SLACK: f64 = 1e-6;
const KOLMOGOROV_TOL: f64 = 1e-9;
const THM8_SEED: u64 = 0x7438;
const THM8_TRIALS: usize = 100;

#[derive(Debug, Parser)]
#[command(name = "subshift", version, about = "Growth lower bounds for subshifts from forbidden-pattern sizes")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "human")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned text tables.
    Human,
    /// One JSON record per line.
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogBaseArg {
    E,
    #[value(name = "2")]
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PaperSection {
    Thm5,
    Thm9,
    Aperiodic,
    Nonrep,
    Kolmogorov,
    Thm8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Best β for a size profile.
    Bound {
        /// Size profile JSON file.
        profile: PathBuf,
        /// general, z, or custom:c0,c1
        #[arg(long, default_value = "general")]
        mode: WeightMode,
        /// Require the residual to exceed a margin (default 1e-9).
        #[arg(long, num_args = 0..=1, default_missing_value = "1e-9", require_equals = true)]
        strict: Option<f64>,
        /// Entropy logarithm base; both are shown when omitted.
        #[arg(long, value_enum)]
        log_base: Option<LogBaseArg>,
    },
    /// Exact counts and growth for an explicit word set.
    Oracle {
        /// Word set JSON file.
        wordset: PathBuf,
        /// Largest word length to count (at most 25).
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        /// A number, or `auto` for β* of the word set's size profile.
        #[arg(long, default_value = "auto")]
        beta: String,
    },
    /// Recompute the worked applications next to their stated values.
    Paper {
        #[arg(long, value_enum)]
        section: PaperSection,
    },
    /// Pavlov's integer bound next to β*.
    ComparePavlov {
        /// Size profile JSON file.
        profile: PathBuf,
    },
}

/// A failure that ends the run with a specific exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => EXIT_RESOURCE,
            Error::Infeasible(_) => EXIT_INFEASIBLE,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_failure(message: String) -> Failure {
    Failure { code: EXIT_INPUT, message }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_failure(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: crate::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

/// Outcome of one invocation: the report plus the exit code it implies.
pub struct Outcome {
    pub report: RunReport,
    pub code: i32,
}

/// Parses `args` and runs the command, writing the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            let written = match cli.format {
                Format::Jsonl => outcome.report.write_jsonl(out),
                Format::Human => render::write_human(&outcome.report, &cli.command, out),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_INPUT;
            }
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Runs a parsed command.
pub fn execute(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Bound { profile, mode, strict, log_base } => cmd_bound(profile, *mode, *strict, *log_base),
        Command::Oracle { wordset, nmax, beta } => cmd_oracle(wordset, *nmax, beta),
        Command::Paper { section } => cmd_paper(*section),
        Command::ComparePavlov { profile } => cmd_compare_pavlov(profile),
    }
}

fn load_profile(path: &Path) -> Result<(String, SizeProfile), Failure> {
    let text = read_input(path)?;
    let profile = with_path(path, SizeProfile::from_json(&text))?;
    Ok((text, profile))
}

fn cmd_bound(path: &Path, mode: WeightMode, strict: Option<f64>, log_base: Option<LogBaseArg>) -> Result<Outcome, Failure> {
    let (text, profile) = load_profile(path)?;
    let condition = match strict {
        Some(margin) => ConditionMode::Strict { margin },
        None => ConditionMode::NonStrict,
    };
    let base = match log_base {
        None => "both".to_string(),
        Some(LogBaseArg::E) => "e".to_string(),
        Some(LogBaseArg::Two) => "2".to_string(),
    };
    let digest = digest_inputs([
        "bound".to_string(),
        mode.to_string(),
        format!("{condition:?}"),
        base,
        text,
    ]);
    let solution = with_path(path, solve_beta(&profile, mode, condition))?;
    let mut report = RunReport::new("bound", digest);
    if let Some(why) = solution.infeasibility {
        report.warn(why.describe());
    }
    let code = if solution.feasible { EXIT_OK } else { EXIT_INFEASIBLE };
    report.push(Row::Bound(BoundRow { alphabet_size: profile.alphabet_size, mode, condition, solution }));
    Ok(Outcome { report, code })
}

fn max_states() -> Result<usize, Failure> {
    match std::env::var(MAX_STATES_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| input_failure(format!("{MAX_STATES_ENV}={v} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_MAX_STATES),
    }
}

fn cmd_oracle(path: &Path, nmax: usize, beta_arg: &str) -> Result<Outcome, Failure> {
    let text = read_input(path)?;
    let ws = with_path(path, WordSet::from_json(&text))?;
    let cap = max_states()?;
    let digest = digest_inputs(["oracle".to_string(), nmax.to_string(), beta_arg.to_string(), cap.to_string(), text]);
    let mut report = RunReport::new("oracle", digest);

    let (beta, solution) = if beta_arg == "auto" {
        let sol = solve_beta(&profile_of(&ws), WeightMode::ZConnected, ConditionMode::NonStrict)?;
        if sol.feasible {
            (Some(sol.beta_star), Some(sol))
        } else {
            report.warn(format!("no feasible beta for this word set ({}); ratio checks skipped", sol.infeasibility.map_or("", |i| i.describe())));
            (None, Some(sol))
        }
    } else {
        let b: f64 = beta_arg
            .parse()
            .ok()
            .filter(|b: &f64| b.is_finite() && *b > 0.0)
            .ok_or_else(|| input_failure(format!("--beta must be a positive number or `auto`, got `{beta_arg}`")))?;
        (Some(b), None)
    };

    let automaton = TransferAutomaton::build_with_cap(&ws, cap)?;
    let mut oracle = run_oracle(&ws, beta.unwrap_or(0.0), nmax, cap)?;
    if beta.is_none() {
        oracle.ratio_ok.clear();
    }
    if oracle.spectral_radius == 0.0 {
        report.warn("the automaton has no cycle: the subshift is empty and its growth is 0");
    }
    let soundness_gap = solution.filter(|s| s.feasible).map(|s| oracle.spectral_radius - s.beta_star);
    if let Some(gap) = soundness_gap {
        if gap < -SOUNDNESS_SLACK {
            report.warn(format!("beta* exceeds the exact growth by {}", -gap));
        }
    }
    if !oracle.submultiplicative_ok {
        report.warn("counts are not submultiplicative");
    }
    report.push(Row::Oracle(OracleRow {
        alphabet_size: ws.alphabet_size(),
        forbidden_words: ws.words().len(),
        states: automaton.state_count(),
        beta,
        solution,
        soundness_gap,
        report: oracle,
    }));
    Ok(Outcome { report, code: EXIT_OK })
}

fn cmd_paper(section: PaperSection) -> Result<Outcome, Failure> {
    let name = format!("{section:?}").to_lowercase();
    let mut report = RunReport::new("paper", digest_inputs(["paper", name.as_str()]));
    let passed = match section {
        PaperSection::Thm5 | PaperSection::Thm9 => {
            let which = if section == PaperSection::Thm5 { Section::Thm5 } else { Section::Thm9 };
            let rows = section_table(which)?;
            let ok = rows.iter().all(|r| r.passes);
            report.results.extend(rows.into_iter().map(Row::Table));
            ok
        }
        PaperSection::Aperiodic => paper_aperiodic(&mut report)?,
        PaperSection::Nonrep => paper_nonrep(&mut report)?,
        PaperSection::Kolmogorov => paper_kolmogorov(&mut report)?,
        PaperSection::Thm8 => paper_thm8(&mut report)?,
    };
    Ok(Outcome { report, code: if passed { EXIT_OK } else { EXIT_MISMATCH } })
}

fn paper_aperiodic(report: &mut RunReport) -> Result<bool, Failure> {
    let beta = 1.9;
    let scan = aperiodic::eq7_scan(beta, 1..=40)?;
    let threshold = aperiodic::eq7_threshold(&scan);
    let ok = scan.iter().filter(|r| r.c >= 11).all(|r| r.holds);
    report.results.extend(scan.into_iter().map(Row::Eq7));
    report.push(Row::Eq7Threshold(threshold));
    for b in [1.9, 1.99] {
        let q = AperiodicQuery { base_profile: SizeProfile::full_shift(2), beta: b };
        let constant = aperiodic::aperiodic_min_c(&q)?;
        report.push(Row::Appendix(AppendixRow { alphabet_size: 2, beta: b, constant }));
    }
    Ok(ok)
}

fn paper_nonrep(report: &mut RunReport) -> Result<bool, Failure> {
    let mut ok = true;
    for s in 2..=10 {
        let b = nonrepetitive_paper_bound(s)?;
        ok &= b.holds;
        report.push(Row::Nonrepetitive(b));
    }
    for s in 2..=10 {
        report.push(Row::Lemma5Chain(lemma5_chain(s)?));
    }
    let m = nonrepetitive_min_alphabet(2)?;
    ok &= m.alphabet <= 67 && m.predecessor_infeasible;
    if m.alphabet > 67 {
        report.warn(format!("smallest feasible alphabet for s = 2 is {}, above the stated 67", m.alphabet));
    }
    report.push(Row::MinAlphabet(m));
    Ok(ok)
}

fn paper_kolmogorov(report: &mut RunReport) -> Result<bool, Failure> {
    for (d, beta) in [(0.5, 1.5), (0.01, 1.5), (0.5, 1.999)] {
        let query = KolmogorovQuery { d, beta };
        report.push(Row::Kolmogorov(KolmogorovRow { query, constant: kolmogorov_constant(query)? }));
    }
    let grid = kolmogorov_grid(20);
    let mut worst: f64 = 0.0;
    for q in &grid {
        worst = worst.max(kolmogorov_constant(*q)?.residual.abs());
    }
    report.push(Row::KolmogorovGrid(KolmogorovGridRow { points: grid.len(), max_abs_residual: worst, tolerance: KOLMOGOROV_TOL }));
    Ok(worst <= KOLMOGOROV_TOL)
}

fn paper_thm8(report: &mut RunReport) -> Result<bool, Failure> {
    let example = theorem8_bound(15, &[0, 1], Theorem8Case::One)?;
    let mut ok = example.premise_holds && example.verified;
    report.push(Row::Theorem8(example));
    report.push(Row::Theorem8(theorem8_bound(15, &[2], Theorem8Case::One)?));
    let mut rng = ChaCha8Rng::seed_from_u64(THM8_SEED);
    for case in Theorem8Case::ALL {
        let suite = theorem8_suite(&mut rng, case, THM8_TRIALS)?;
        ok &= suite.violations.is_empty();
        report.push(Row::Theorem8Suite(suite));
    }
    Ok(ok)
}

fn cmd_compare_pavlov(path: &Path) -> Result<Outcome, Failure> {
    let (text, profile) = load_profile(path)?;
    let mut report = RunReport::new("compare-pavlov", digest_inputs(["compare-pavlov".to_string(), text]));
    let cmp = with_path(path, compare_pavlov(&profile))?;
    let code = if cmp.dominates { EXIT_OK } else { EXIT_PAVLOV };
    if !cmp.dominates {
        report.warn(format!("beta* = {} does not exceed k = {}", cmp.solution.beta_star, cmp.pavlov.k_best));
    }
    report.push(Row::Pavlov(cmp));
    Ok(Outcome { report, code })
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub(crate) fn entropy_columns(log_base: Option<LogBaseArg>) -> Vec<LogBase> {
    match log_base {
        Some(LogBaseArg::E) => vec![LogBase::E],
        Some(LogBaseArg::Two) => vec![LogBase::Two],
        None => vec![LogBase::E, LogBase::Two],
    }
}
