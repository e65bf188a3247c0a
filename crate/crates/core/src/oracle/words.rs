use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use super::{ENUMERATION_CAP, MAX_ALPHABET, MAX_WORD_LENGTH, MAX_WORD_QUERY};
use crate::error::{Error, Result};

/// A finite set of forbidden words (connected patterns) over `{0, …, q−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSet {
    alphabet_size: u8,
    words: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WordSetFile {
    alphabet_size: u32,
    forbidden_words: Vec<String>,
}

impl WordSet {
    pub fn new(alphabet_size: u32, words: Vec<Vec<u8>>) -> Result<Self> {
        if !(2..=MAX_ALPHABET).contains(&alphabet_size) {
            return Err(Error::InvalidInput(format!(
                "alphabet_size must be in [2, {MAX_ALPHABET}], got {alphabet_size}"
            )));
        }
        let mut seen = BTreeSet::new();
        for w in &words {
            if w.is_empty() {
                return Err(Error::InvalidInput("forbidden words must be nonempty".into()));
            }
            if w.len() > MAX_WORD_LENGTH {
                return Err(Error::Resource(format!(
                    "forbidden word of length {} exceeds the cap {MAX_WORD_LENGTH}",
                    w.len()
                )));
            }
            if let Some(&bad) = w.iter().find(|&&c| c as u32 >= alphabet_size) {
                return Err(Error::InvalidInput(format!(
                    "letter {bad} is outside the alphabet {{0..{}}}",
                    alphabet_size - 1
                )));
            }
            if !seen.insert(w.clone()) {
                return Err(Error::InvalidInput(format!("duplicate forbidden word {}", render_word(w))));
            }
        }
        Ok(WordSet { alphabet_size: alphabet_size as u8, words })
    }

    /// Parses words written as digit strings, e.g. `["011", "2"]`.
    pub fn from_strings<S: AsRef<str>>(alphabet_size: u32, words: &[S]) -> Result<Self> {
        let parsed = words.iter().map(|w| parse_word(w.as_ref())).collect::<Result<Vec<_>>>()?;
        WordSet::new(alphabet_size, parsed)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: WordSetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        WordSet::from_strings(file.alphabet_size, &file.forbidden_words)
    }

    pub fn to_json(&self) -> String {
        let file = WordSetFile {
            alphabet_size: self.alphabet_size as u32,
            forbidden_words: self.words.iter().map(|w| render_word(w)).collect(),
        };
        serde_json::to_string_pretty(&file).expect("word set serialization cannot fail")
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size as u32
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    /// Length of the longest forbidden word, 0 for the empty set.
    pub fn max_length(&self) -> usize {
        self.words.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// A copy with one more forbidden word.
    pub fn with_word(&self, word: Vec<u8>) -> Result<Self> {
        let mut words = self.words.clone();
        words.push(word);
        WordSet::new(self.alphabet_size(), words)
    }
}

fn parse_word(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as u8)
                .ok_or_else(|| Error::InvalidInput(format!("word `{text}` contains non-digit `{c}`")))
        })
        .collect()
}

pub fn render_word(word: &[u8]) -> String {
    word.iter().map(|&c| char::from(b'0' + c)).collect()
}

/// Forbidden words grouped by their last letter for the incremental suffix check.
struct SuffixIndex<'a> {
    by_last: Vec<Vec<&'a [u8]>>,
}

impl<'a> SuffixIndex<'a> {
    fn new(ws: &'a WordSet) -> Self {
        let mut by_last = vec![Vec::new(); ws.alphabet_size as usize];
        for w in &ws.words {
            by_last[*w.last().expect("nonempty") as usize].push(w.as_slice());
        }
        SuffixIndex { by_last }
    }

    /// True when some forbidden word is a suffix of `prefix`.
    fn ends_badly(&self, prefix: &[u8]) -> bool {
        let last = *prefix.last().expect("nonempty prefix") as usize;
        self.by_last[last].iter().any(|w| prefix.ends_with(w))
    }
}

/// Number of length-`n` words over `q` letters containing no forbidden word
/// as a contiguous block, by depth-first extension with suffix checks.
pub fn count_admissible_words(ws: &WordSet, n: usize) -> Result<u128> {
    if n == 0 || n > MAX_WORD_QUERY {
        return Err(Error::Domain(format!("word length must be in [1, {MAX_WORD_QUERY}], got {n}")));
    }
    let q = ws.alphabet_size as u32;
    let candidates = (q as f64).powi(n as i32);
    if candidates > ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "direct enumeration of {q}^{n} words exceeds the cap {ENUMERATION_CAP:e}"
        )));
    }
    let index = SuffixIndex::new(ws);
    let mut buf = vec![0u8; n];
    Ok(extend(&index, q as u8, &mut buf, 0))
}

fn extend(index: &SuffixIndex, q: u8, buf: &mut [u8], depth: usize) -> u128 {
    let last = depth + 1 == buf.len();
    let mut total = 0;
    for c in 0..q {
        buf[depth] = c;
        if index.ends_badly(&buf[..=depth]) {
            continue;
        }
        total += if last { 1 } else { extend(index, q, buf, depth + 1) };
    }
    total
}

/// [`count_admissible_words`] for every `n` in `1..=n_max`.
pub fn enumerate_counts(ws: &WordSet, n_max: usize) -> Result<Vec<u128>> {
    (1..=n_max).map(|n| count_admissible_words(ws, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(ws: &WordSet, n: usize) -> u128 {
        let q = ws.alphabet_size() as usize;
        let mut count = 0;
        for code in 0..q.pow(n as u32) {
            let mut word = vec![0u8; n];
            let mut c = code;
            for slot in word.iter_mut().rev() {
                *slot = (c % q) as u8;
                c /= q;
            }
            let bad = ws.words().iter().any(|f| f.len() <= n && word.windows(f.len()).any(|win| win == f.as_slice()));
            if !bad {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn golden_mean_counts() {
        let ws = WordSet::from_strings(2, &["11"]).unwrap();
        assert_eq!(brute_force(&ws, 4), 8);
        assert_eq!(count_admissible_words(&ws, 4).unwrap(), 8);
        assert_eq!(count_admissible_words(&ws, 1).unwrap(), 2);
        assert_eq!(enumerate_counts(&ws, 6).unwrap(), vec![2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn full_shift_counts() {
        let ws = WordSet::new(2, vec![]).unwrap();
        assert_eq!(count_admissible_words(&ws, 5).unwrap(), 32);
    }

    #[test]
    fn matches_brute_force_on_mixed_set() {
        let ws = WordSet::from_strings(3, &["000", "12", "2021", "1"]).unwrap();
        for n in 1..=7 {
            assert_eq!(count_admissible_words(&ws, n).unwrap(), brute_force(&ws, n), "n = {n}");
        }
    }

    #[test]
    fn enumeration_cap_is_explicit() {
        let ws = WordSet::new(6, vec![]).unwrap();
        assert!(matches!(count_admissible_words(&ws, 11), Err(Error::Resource(_))));
        assert!(matches!(count_admissible_words(&ws, 0), Err(Error::Domain(_))));
        assert!(matches!(count_admissible_words(&ws, 31), Err(Error::Domain(_))));
    }

    #[test]
    fn validation() {
        assert!(WordSet::from_strings(2, &["12"]).is_err());
        assert!(WordSet::from_strings(2, &["01", "01"]).is_err());
        assert!(WordSet::from_strings(2, &[""]).is_err());
        assert!(WordSet::from_strings(7, &["0"]).is_err());
        assert!(matches!(WordSet::from_strings(2, &["010101010101010"]), Err(Error::Resource(_))));
    }

    #[test]
    fn json_format() {
        let ws = WordSet::from_json(r#"{"alphabet_size": 2, "forbidden_words": ["011", "1"]}"#).unwrap();
        assert_eq!(ws.words(), &[vec![0, 1, 1], vec![1]]);
        assert_eq!(WordSet::from_json(&ws.to_json()).unwrap(), ws);
        assert!(WordSet::from_json(r#"{"alphabet_size": 2, "forbidden_words": [], "x": 1}"#).is_err());
    }
}
