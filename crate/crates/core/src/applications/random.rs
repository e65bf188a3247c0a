//! Seeded generators for the randomized checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::oracle::WordSet;
use crate::series::{FamilyTerm, SizeProfile};

/// A word set with `q ∈ alphabets`, up to `max_words` distinct words of
/// length `1..=max_len`.
pub fn random_word_set<R: Rng>(rng: &mut R, alphabets: &[u32], max_words: usize, max_len: usize) -> WordSet {
    let q = *alphabets.choose(rng).expect("nonempty alphabet choices");
    let target = rng.gen_range(0..=max_words);
    let mut words: Vec<Vec<u8>> = Vec::with_capacity(target);
    while words.len() < target {
        let len = rng.gen_range(1..=max_len);
        let word: Vec<u8> = (0..len).map(|_| rng.gen_range(0..q) as u8).collect();
        if !words.contains(&word) {
            words.push(word);
        }
    }
    WordSet::new(q, words).expect("generated word sets are valid")
}

fn random_term<R: Rng>(rng: &mut R) -> FamilyTerm {
    match rng.gen_range(0..3) {
        0 => FamilyTerm::finite(rng.gen_range(1..=6) as f64, rng.gen_range(1..=8)),
        1 => FamilyTerm::one_per_size(rng.gen_range(1..=6), rng.gen_range(1..=3)),
        _ => {
            let n_start = rng.gen_range(1..=3);
            FamilyTerm::family(
                rng.gen_range(0.05..2.0),
                rng.gen_range(0.5..3.0),
                rng.gen_range(0..=2),
                n_start,
                rng.gen_range(1..=3),
                rng.gen_range(0..=2),
            )
        }
    }
}

/// A valid profile with one to four terms over `2..=max_alphabet` letters.
pub fn random_profile<R: Rng>(rng: &mut R, max_alphabet: u32) -> SizeProfile {
    let q = rng.gen_range(2..=max_alphabet);
    let terms = (0..rng.gen_range(1..=4)).map(|_| random_term(rng)).collect();
    SizeProfile::new(q, terms)
}

/// Like [`random_profile`], with at least one pattern of size two or more.
pub fn random_nontrivial_profile<R: Rng>(rng: &mut R, max_alphabet: u32) -> SizeProfile {
    let mut profile = random_profile(rng, max_alphabet);
    if !profile.is_nontrivial() {
        profile.terms.push(FamilyTerm::finite(1.0, rng.gen_range(2..=6)));
    }
    profile
}
