use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::io::Write;

use crate::applications::aperiodic::{AperiodicConstant, Eq7Check, Eq7Threshold};
use crate::applications::kolmogorov::{KolmogorovConstant, KolmogorovQuery};
use crate::applications::nonrepetitive::{Lemma5Chain, MinAlphabet, NonrepetitiveBound};
use crate::applications::pavlov::PavlovComparison;
use crate::applications::tables::TableRow;
use crate::applications::theorem8::{SuiteSummary, Theorem8Outcome};
use crate::error::{Error, Result};
use crate::oracle::OracleReport;
use crate::series::WeightMode;
use crate::solver::{BetaSolution, ConditionMode};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub alphabet_size: u32,
    pub mode: WeightMode,
    pub condition: ConditionMode,
    pub solution: BetaSolution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub alphabet_size: u32,
    pub forbidden_words: usize,
    pub states: usize,
    /// β used for the ratio checks.
    pub beta: Option<f64>,
    /// Unit-weight β* of the word set's size profile, for `--beta=auto`.
    pub solution: Option<BetaSolution>,
    /// `spectral_radius − β*` when β* is feasible.
    pub soundness_gap: Option<f64>,
    pub report: OracleReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppendixRow {
    pub alphabet_size: u32,
    pub beta: f64,
    pub constant: AperiodicConstant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KolmogorovRow {
    pub query: KolmogorovQuery,
    pub constant: KolmogorovConstant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KolmogorovGridRow {
    pub points: usize,
    pub max_abs_residual: f64,
    pub tolerance: f64,
}

/// One structured result line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Row {
    Bound(BoundRow),
    Oracle(OracleRow),
    Table(TableRow),
    Eq7(Eq7Check),
    Eq7Threshold(Eq7Threshold),
    Appendix(AppendixRow),
    Nonrepetitive(NonrepetitiveBound),
    Lemma5Chain(Lemma5Chain),
    MinAlphabet(MinAlphabet),
    Kolmogorov(KolmogorovRow),
    KolmogorovGrid(KolmogorovGridRow),
    Theorem8(Theorem8Outcome),
    Theorem8Suite(SuiteSummary),
    Pavlov(PavlovComparison),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub results: Vec<Row>,
    pub warnings: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Record {
    Header { command: String, inputs_digest: String },
    Row(Row),
    Warning(String),
}

/// Hex SHA-256 over length-prefixed input parts.
pub fn digest_inputs<I, B>(parts: I) -> String
where
    I: IntoIterator<Item = B>,
    B: AsRef<[u8]>,
{
    let mut hasher = Sha256::new();
    for part in parts {
        let bytes = part.as_ref();
        hasher.update((bytes.len() as u64).to_le_bytes());
        hasher.update(bytes);
    }
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl RunReport {
    pub fn new(command: &str, inputs_digest: String) -> Self {
        RunReport { command: command.to_string(), inputs_digest, results: Vec::new(), warnings: Vec::new() }
    }

    pub fn push(&mut self, row: Row) {
        self.results.push(row);
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    /// Header line, one line per row, then one line per warning.
    pub fn write_jsonl<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        let header = Record::Header { command: self.command.clone(), inputs_digest: self.inputs_digest.clone() };
        writeln!(out, "{}", serde_json::to_string(&header)?)?;
        for row in &self.results {
            writeln!(out, "{}", serde_json::to_string(&Record::Row(row.clone()))?)?;
        }
        for w in &self.warnings {
            writeln!(out, "{}", serde_json::to_string(&Record::Warning(w.clone()))?)?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("serde_json emits UTF-8")
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let parse = |i: usize, line: &str| {
            serde_json::from_str::<Record>(line).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))
        };
        let (i, first) = lines.next().ok_or_else(|| Error::Parse("empty report".into()))?;
        let mut report = match parse(i, first)? {
            Record::Header { command, inputs_digest } => RunReport::new(&command, inputs_digest),
            _ => return Err(Error::Parse("line 1: expected a header record".into())),
        };
        for (i, line) in lines {
            match parse(i, line)? {
                Record::Header { .. } => return Err(Error::Parse(format!("line {}: repeated header", i + 1))),
                Record::Row(row) => report.results.push(row),
                Record::Warning(w) => report.warnings.push(w),
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::applications::aperiodic_check_eq7;

    #[test]
    fn jsonl_round_trip() {
        let mut r = RunReport::new("paper", digest_inputs(["paper", "aperiodic"]));
        r.push(Row::Eq7(aperiodic_check_eq7(11, 1.9).unwrap()));
        r.push(Row::Eq7(aperiodic_check_eq7(2, 1.2).unwrap()));
        r.warn("something odd");
        let text = r.to_jsonl();
        assert_eq!(text.lines().count(), 4);
        assert_eq!(RunReport::from_jsonl(&text).unwrap(), r);
    }

    #[test]
    fn digest_is_stable_and_separates_parts() {
        assert_eq!(digest_inputs(["ab", "c"]), digest_inputs(["ab", "c"]));
        assert_ne!(digest_inputs(["ab", "c"]), digest_inputs(["a", "bc"]));
        assert_eq!(digest_inputs(["x"]).len(), 64);
    }

    #[test]
    fn rejects_missing_header() {
        assert!(RunReport::from_jsonl("").is_err());
        assert!(RunReport::from_jsonl(r#"{"warning":"x"}"#).is_err());
    }
}
