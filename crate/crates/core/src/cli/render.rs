use std::io::{self, Write};

use super::report::{Row, RunReport};
use super::{entropy_columns, Command};
use crate::oracle::OracleReport;
use crate::solver::LogBase;

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.digits$}"))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_counts<W: Write>(out: &mut W, r: &OracleReport) -> io::Result<()> {
    writeln!(out, "{:>4}  {:>24}  L(n) >= beta*L(n-1)", "n", "L(n)")?;
    for (i, c) in r.counts.iter().enumerate() {
        let ratio = r.ratio_ok.get(i).map_or("-", |&b| if b { "ok" } else { "FAIL" });
        writeln!(out, "{:>4}  {:>24}  {}", i + 1, c, ratio)?;
    }
    Ok(())
}

fn write_row<W: Write>(out: &mut W, row: &Row, command: &Command) -> io::Result<()> {
    match row {
        Row::Bound(b) => {
            let s = &b.solution;
            writeln!(out, "alphabet       {}", b.alphabet_size)?;
            writeln!(out, "mode           {}", b.mode)?;
            writeln!(out, "condition      {}", match b.condition {
                crate::solver::ConditionMode::NonStrict => "non-strict".to_string(),
                crate::solver::ConditionMode::Strict { margin } => format!("strict (margin {margin:e})"),
            })?;
            writeln!(out, "feasible       {}", yes_no(s.feasible))?;
            if s.feasible {
                writeln!(out, "beta*          {:.9}", s.beta_star)?;
                writeln!(out, "beta_low       {:.9}", s.beta_low)?;
                let log_base = match command {
                    Command::Bound { log_base, .. } => *log_base,
                    _ => None,
                };
                for base in entropy_columns(log_base) {
                    let label = match base {
                        LogBase::E => "entropy (ln)",
                        LogBase::Two => "entropy (log2)",
                    };
                    writeln!(out, "{label:<15}{:.9}", s.entropy(base))?;
                }
            } else if let Some(why) = s.infeasibility {
                writeln!(out, "reason         {}", why.describe())?;
            }
            writeln!(out, "residual       {:e}", s.residual_at_star)?;
            writeln!(out, "minimizer      {:.9}", s.g_minimizer)?;
            writeln!(out, "peak           {:e}", s.peak_residual)?;
        }
        Row::Oracle(o) => {
            writeln!(out, "alphabet        {}", o.alphabet_size)?;
            writeln!(out, "forbidden words {}", o.forbidden_words)?;
            writeln!(out, "states          {}", o.states)?;
            writeln!(out, "spectral radius {:.9}", o.report.spectral_radius)?;
            if let Some(sol) = &o.solution {
                if sol.feasible {
                    writeln!(out, "beta*           {:.9}", sol.beta_star)?;
                } else {
                    writeln!(out, "beta*           infeasible")?;
                }
            }
            writeln!(out, "beta (ratios)   {}", opt(o.beta, 9))?;
            writeln!(out, "soundness gap   {}", opt(o.soundness_gap, 9))?;
            writeln!(out, "submultiplicative {}", yes_no(o.report.submultiplicative_ok))?;
            write_counts(out, &o.report)?;
        }
        Row::Table(t) => {
            writeln!(
                out,
                "{:<12} {:<52} {:>12.9} {:>8} {:>10} {:>12} {}",
                t.id,
                t.description,
                t.beta_star,
                opt(t.stated, 6),
                t.diff.map_or("-".to_string(), |d| format!("{d:.1e}")),
                opt(t.polynomial_root, 9),
                if t.stated.is_none() { "info" } else if t.passes { "ok" } else { "MISS" },
            )?;
        }
        Row::Eq7(e) => {
            let verdict = if e.holds { "holds" } else { "fails" };
            writeln!(out, "C={}, beta={}: {verdict} (residual {:.6e})", e.c, e.beta, e.residual)?;
        }
        Row::Eq7Threshold(t) => {
            writeln!(
                out,
                "first holding C: {}, largest failing C below it: {}, holds for every larger C scanned: {}",
                t.first_holding.map_or("-".into(), |c| c.to_string()),
                t.last_failing_below.map_or("-".into(), |c| c.to_string()),
                yes_no(t.monotone)
            )?;
        }
        Row::Appendix(a) => {
            writeln!(
                out,
                "|A|={}, beta={}: slack {:.6e}, smallest C = {} (term {:.6e})",
                a.alphabet_size, a.beta, a.constant.delta, a.constant.c, a.constant.term
            )?;
        }
        Row::Nonrepetitive(b) => {
            writeln!(
                out,
                "s={:<3} alphabet={:<6} beta={:<14.6} holds={:<3} residual={:.6e}",
                b.s,
                b.alphabet,
                b.beta,
                yes_no(b.holds),
                b.residual
            )?;
        }
        Row::Lemma5Chain(c) => {
            writeln!(
                out,
                "s={:<3} direct sum={:<12.6} middle={:<12.6} closed form={:<12.6} 4s^(5/3)={:<12.6} direct/middle={:.6}",
                c.s,
                c.direct_sum,
                c.middle_series,
                c.closed_form,
                c.target,
                c.direct_over_middle()
            )?;
        }
        Row::MinAlphabet(m) => {
            writeln!(
                out,
                "s={}: smallest feasible alphabet {} (beta* {:.6}), alphabet {} infeasible: {}",
                m.s,
                m.alphabet,
                m.beta_star,
                m.alphabet.saturating_sub(1),
                yes_no(m.predecessor_infeasible)
            )?;
        }
        Row::Kolmogorov(k) => {
            writeln!(
                out,
                "d={}, beta={}: C = {:.9} (log base 2), residual {:.3e}",
                k.query.d, k.query.beta, k.constant.c, k.constant.residual
            )?;
        }
        Row::KolmogorovGrid(g) => {
            writeln!(out, "grid of {} points: max |residual| = {:.3e} (tolerance {:e})", g.points, g.max_abs_residual, g.tolerance)?;
        }
        Row::Theorem8(t) => {
            writeln!(
                out,
                "case {} |A|={}: premise sum {:.6} holds={} claimed beta {:.6} verified={} residual {:.6e}",
                t.case.index(),
                t.alphabet,
                t.premise_sum,
                yes_no(t.premise_holds),
                t.claimed_beta,
                yes_no(t.verified),
                t.residual
            )?;
        }
        Row::Theorem8Suite(s) => {
            writeln!(out, "case {}: {} random premise-satisfying inputs, {} violations", s.case.index(), s.checked, s.violations.len())?;
        }
        Row::Pavlov(p) => {
            writeln!(out, "pavlov k        {}", p.pavlov.k_best)?;
            writeln!(out, "witness beta    {:.9}", p.pavlov.beta_witness)?;
            writeln!(out, "pavlov margin   {:.9}", p.pavlov.margin)?;
            if p.solution.feasible {
                writeln!(out, "beta*           {:.9}", p.solution.beta_star)?;
            } else {
                writeln!(out, "beta*           infeasible")?;
            }
            writeln!(out, "beta* > k       {}", if p.pavlov.k_best == 0 { "n/a (k = 0)" } else { yes_no(p.dominates) })?;
        }
    }
    Ok(())
}

pub fn write_human<W: Write>(report: &RunReport, command: &Command, out: &mut W) -> io::Result<()> {
    writeln!(out, "# {} (inputs {})", report.command, &report.inputs_digest[..16])?;
    if report.results.iter().any(|r| matches!(r, Row::Table(_))) {
        writeln!(
            out,
            "{:<12} {:<52} {:>12} {:>8} {:>10} {:>12} status",
            "item", "sizes", "beta*", "stated", "|diff|", "poly root"
        )?;
    }
    for row in &report.results {
        write_row(out, row, command)?;
    }
    for w in &report.warnings {
        writeln!(out, "warning: {w}")?;
    }
    Ok(())
}
