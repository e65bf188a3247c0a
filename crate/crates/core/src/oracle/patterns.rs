use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

use super::words::WordSet;
use super::{ENUMERATION_CAP, MAX_ALPHABET, MAX_COORDINATE, MAX_PATTERN_SUPPORT, MAX_SUPPORT};
use crate::error::{Error, Result};

/// A pattern on a finite subset of ℤ: `values[i]` sits at `support[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pattern {
    pub support: Vec<i32>,
    pub values: Vec<u8>,
}

impl Pattern {
    pub fn size(&self) -> usize {
        self.support.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralPatternSet {
    pub alphabet_size: u32,
    pub patterns: Vec<Pattern>,
}

impl GeneralPatternSet {
    pub fn new(alphabet_size: u32, patterns: Vec<Pattern>) -> Result<Self> {
        let set = GeneralPatternSet { alphabet_size, patterns };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        let q = self.alphabet_size;
        if !(2..=MAX_ALPHABET).contains(&q) {
            return Err(Error::InvalidInput(format!("alphabet_size must be in [2, {MAX_ALPHABET}], got {q}")));
        }
        for (i, p) in self.patterns.iter().enumerate() {
            if p.support.is_empty() {
                return Err(Error::InvalidInput(format!("patterns[{i}]: empty support")));
            }
            if p.support.len() > MAX_PATTERN_SUPPORT {
                return Err(Error::Resource(format!(
                    "patterns[{i}]: support of size {} exceeds {MAX_PATTERN_SUPPORT}",
                    p.support.len()
                )));
            }
            if p.values.len() != p.support.len() {
                return Err(Error::InvalidInput(format!(
                    "patterns[{i}]: {} values for a support of size {}",
                    p.values.len(),
                    p.support.len()
                )));
            }
            if let Some(c) = p.support.iter().find(|c| c.abs() > MAX_COORDINATE) {
                return Err(Error::InvalidInput(format!(
                    "patterns[{i}]: coordinate {c} outside [-{MAX_COORDINATE}, {MAX_COORDINATE}]"
                )));
            }
            if p.support.iter().collect::<BTreeSet<_>>().len() != p.support.len() {
                return Err(Error::InvalidInput(format!("patterns[{i}]: repeated coordinate")));
            }
            if let Some(v) = p.values.iter().find(|&&v| v as u32 >= q) {
                return Err(Error::InvalidInput(format!("patterns[{i}]: letter {v} outside the alphabet")));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let set: GeneralPatternSet = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        set.validate()?;
        Ok(set)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pattern set serialization cannot fail")
    }

    /// Each word becomes a pattern on `{0, …, len − 1}`.
    pub fn from_words(ws: &WordSet) -> Self {
        let patterns = ws
            .words()
            .iter()
            .map(|w| Pattern { support: (0..w.len() as i32).collect(), values: w.clone() })
            .collect();
        GeneralPatternSet { alphabet_size: ws.alphabet_size(), patterns }
    }
}

/// Placements whose rightmost cell is a given support position, as
/// `(support indices, required letters)`.
type Placement = (Vec<usize>, Vec<u8>);

/// Number of colourings of `support` in which no translate `g + supp(f)`
/// lying entirely inside the support carries the letters of `f`.
pub fn count_admissible_on_support(ps: &GeneralPatternSet, support: &[i32]) -> Result<u128> {
    ps.validate()?;
    let cells: Vec<i32> = support.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if cells.len() > MAX_SUPPORT {
        return Err(Error::Resource(format!("support of size {} exceeds {MAX_SUPPORT}", cells.len())));
    }
    let q = ps.alphabet_size;
    if (q as f64).powi(cells.len() as i32) > ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "enumerating {q}^{} colourings exceeds the cap {ENUMERATION_CAP:e}",
            cells.len()
        )));
    }
    if cells.is_empty() {
        return Ok(1);
    }

    let position: HashMap<i32, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut checks: Vec<Vec<Placement>> = vec![Vec::new(); cells.len()];
    for p in &ps.patterns {
        let top = *p.support.iter().max().expect("nonempty support");
        for (i, &cell) in cells.iter().enumerate() {
            let shift = cell - top;
            let slots: Option<Vec<usize>> = p.support.iter().map(|s| position.get(&(s + shift)).copied()).collect();
            if let Some(slots) = slots {
                checks[i].push((slots, p.values.clone()));
            }
        }
    }

    let mut colouring = vec![0u8; cells.len()];
    Ok(fill(&checks, q as u8, &mut colouring, 0))
}

fn fill(checks: &[Vec<Placement>], q: u8, colouring: &mut [u8], depth: usize) -> u128 {
    let mut total = 0;
    for c in 0..q {
        colouring[depth] = c;
        let hit = checks[depth]
            .iter()
            .any(|(slots, values)| slots.iter().zip(values).all(|(&s, &v)| colouring[s] == v));
        if hit {
            continue;
        }
        total += if depth + 1 == colouring.len() { 1 } else { fill(checks, q, colouring, depth + 1) };
    }
    total
}
