//! Exact counting for explicit one-dimensional SFTs.
//!
//! Admissible-word counts come from depth-first enumeration ([`words`]) or
//! from path counting in the sliding-window automaton ([`automaton`]), whose
//! spectral radius is the exact growth rate. [`patterns`] handles forbidden
//! patterns with gaps on arbitrary finite supports.

pub mod automaton;
pub mod patterns;
pub mod words;

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub use automaton::{growth_transfer_matrix, SpectralEstimate, TransferAutomaton};
pub use patterns::{count_admissible_on_support, GeneralPatternSet, Pattern};
pub use words::{count_admissible_words, enumerate_counts, render_word, WordSet};

use crate::error::{Error, Result};
use crate::series::{FamilyTerm, SizeProfile};

pub const MAX_ALPHABET: u32 = 6;
pub const MAX_WORD_LENGTH: usize = 14;
pub const MAX_WORD_QUERY: usize = 30;
pub const MAX_RATIO_N: usize = 25;
pub const MAX_SUPPORT: usize = 22;
pub const MAX_PATTERN_SUPPORT: usize = 10;
pub const MAX_COORDINATE: i32 = 20;
/// Largest number of candidate words or colourings a direct enumeration may face.
pub const ENUMERATION_CAP: f64 = 1e8;
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

/// Relative slack in `L(n+1) ≥ β·L(n)` so that equalities survive rounding.
const RATIO_SLACK: f64 = 1e-12;

fn at_least(lhs: f64, rhs: f64) -> bool {
    lhs >= rhs - RATIO_SLACK * rhs.abs()
}

/// `ok[0]` is `L(1) ≥ β`; `ok[n]` is `L(n+1) ≥ β·L(n)` for `1 ≤ n < len`.
pub fn ratio_checks(counts: &[u128], beta: f64) -> Vec<bool> {
    let mut ok = Vec::with_capacity(counts.len());
    if let Some(&first) = counts.first() {
        ok.push(at_least(first as f64, beta));
    }
    ok.extend(counts.windows(2).map(|w| at_least(w[1] as f64, beta * w[0] as f64)));
    ok
}

/// Per-step verdicts of the ratio lemma on automaton counts up to `n_max`.
pub fn check_ratio_lemma(ws: &WordSet, beta: f64, n_max: usize) -> Result<Vec<bool>> {
    if n_max == 0 || n_max > MAX_RATIO_N {
        return Err(Error::Domain(format!("n_max must be in [1, {MAX_RATIO_N}], got {n_max}")));
    }
    let counts = TransferAutomaton::build(ws)?.counts(n_max)?;
    Ok(ratio_checks(&counts, beta))
}

/// `L(i+j) ≤ L(i)·L(j)` for all `i + j ≤ len`, indices one-based.
pub fn check_submultiplicative(counts: &[u128]) -> bool {
    let n = counts.len();
    (1..=n).all(|i| {
        (1..=n - i).all(|j| match counts[i - 1].checked_mul(counts[j - 1]) {
            Some(product) => counts[i + j - 1] <= product,
            None => true,
        })
    })
}

fn profile_from_sizes(alphabet_size: u32, sizes: impl IntoIterator<Item = usize>) -> SizeProfile {
    let mut histogram = BTreeMap::new();
    for s in sizes {
        *histogram.entry(s as u64).or_insert(0u64) += 1;
    }
    let terms = histogram.into_iter().map(|(size, count)| FamilyTerm::finite(count as f64, size)).collect();
    SizeProfile::new(alphabet_size, terms)
}

/// One finite term per distinct forbidden length.
pub fn profile_of(ws: &WordSet) -> SizeProfile {
    profile_from_sizes(ws.alphabet_size(), ws.words().iter().map(Vec::len))
}

/// One finite term per distinct support size.
pub fn profile_of_patterns(ps: &GeneralPatternSet) -> SizeProfile {
    profile_from_sizes(ps.alphabet_size, ps.patterns.iter().map(Pattern::size))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub counts: Vec<u128>,
    #[serde(with = "crate::float_repr")]
    pub spectral_radius: f64,
    pub ratio_ok: Vec<bool>,
    pub submultiplicative_ok: bool,
}

/// Counts, growth and lemma checks for one word set.
pub fn run_oracle(ws: &WordSet, beta: f64, n_max: usize, max_states: usize) -> Result<OracleReport> {
    if n_max == 0 || n_max > MAX_WORD_QUERY {
        return Err(Error::Domain(format!("n_max must be in [1, {MAX_WORD_QUERY}], got {n_max}")));
    }
    let automaton = TransferAutomaton::build_with_cap(ws, max_states)?;
    let counts = automaton.counts(n_max)?;
    Ok(OracleReport {
        spectral_radius: automaton.spectral_radius().radius,
        ratio_ok: ratio_checks(&counts, beta),
        submultiplicative_ok: check_submultiplicative(&counts),
        counts,
    })
}
