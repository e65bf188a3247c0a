use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{FamilyTerm, SizeProfile, WeightMode};
use crate::solver::{verify_condition, ConditionMode};

/// The three premise/conclusion pairs strengthening Pavlov's density theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem8Case {
    /// `Σ|F_n|(3/q)^n < 1/5` gives `β = 14q/15`.
    One,
    /// `Σ|F_n|(6/(5q))^n < 1/5` gives `β = 5q/6`.
    Two,
    /// `Σ|F_n|(3/q)^n < 3/4` gives `β = 3q/4`.
    Three,
}

impl Theorem8Case {
    pub const ALL: [Theorem8Case; 3] = [Theorem8Case::One, Theorem8Case::Two, Theorem8Case::Three];

    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Theorem8Case::One),
            2 => Ok(Theorem8Case::Two),
            3 => Ok(Theorem8Case::Three),
            _ => Err(Error::InvalidInput(format!("case must be 1, 2 or 3, got {i}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Theorem8Case::One => 1,
            Theorem8Case::Two => 2,
            Theorem8Case::Three => 3,
        }
    }

    /// Base `b` of the premise `Σ|F_n| b^n < bound`.
    pub fn premise_base(self, q: u32) -> f64 {
        let q = q as f64;
        match self {
            Theorem8Case::One | Theorem8Case::Three => 3.0 / q,
            Theorem8Case::Two => 6.0 / (5.0 * q),
        }
    }

    pub fn premise_bound(self) -> f64 {
        match self {
            Theorem8Case::One | Theorem8Case::Two => 0.2,
            Theorem8Case::Three => 0.75,
        }
    }

    pub fn claimed_beta(self, q: u32) -> f64 {
        let q = q as f64;
        match self {
            Theorem8Case::One => 14.0 * q / 15.0,
            Theorem8Case::Two => 5.0 * q / 6.0,
            Theorem8Case::Three => 3.0 * q / 4.0,
        }
    }

    pub fn premise_sum(self, q: u32, fn_counts: &[u64]) -> f64 {
        let b = self.premise_base(q);
        fn_counts.iter().zip(1..).map(|(&c, n)| c as f64 * b.powi(n)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem8Outcome {
    pub case: Theorem8Case,
    pub alphabet: u32,
    pub premise_sum: f64,
    pub premise_holds: bool,
    pub claimed_beta: f64,
    pub verified: bool,
    #[serde(with = "crate::float_repr")]
    pub residual: f64,
}

/// `fn_counts[n − 1] = |F_n|`; lengths past the list have no patterns.
pub fn length_profile(q: u32, fn_counts: &[u64]) -> SizeProfile {
    let terms = fn_counts
        .iter()
        .zip(1u64..)
        .filter(|(&c, _)| c > 0)
        .map(|(&c, n)| FamilyTerm::finite(c as f64, n))
        .collect();
    SizeProfile::new(q, terms)
}

pub fn theorem8_bound(q: u32, fn_counts: &[u64], case: Theorem8Case) -> Result<Theorem8Outcome> {
    if q < 4 {
        return Err(Error::Domain(format!("alphabet must have at least 4 letters, got {q}")));
    }
    let premise_sum = case.premise_sum(q, fn_counts);
    let claimed_beta = case.claimed_beta(q);
    let check = verify_condition(&length_profile(q, fn_counts), WeightMode::ZConnected, ConditionMode::NonStrict, claimed_beta)?;
    Ok(Theorem8Outcome {
        case,
        alphabet: q,
        premise_sum,
        premise_holds: premise_sum < case.premise_bound(),
        claimed_beta,
        verified: check.holds,
        residual: check.residual,
    })
}

/// Random pattern counts satisfying the premise of `case`: lengths are
/// visited in random order and each receives a random share of the
/// remaining budget.
pub fn random_premise_counts<R: Rng>(rng: &mut R, q: u32, case: Theorem8Case, max_len: usize) -> Vec<u64> {
    let b = case.premise_base(q);
    let mut budget = case.premise_bound() * (1.0 - 1e-9);
    let mut counts = vec![0u64; max_len];
    let mut order: Vec<usize> = (1..=max_len).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    for n in order {
        let unit = b.powi(n as i32);
        let room = (budget / unit).floor();
        if room < 1.0 {
            continue;
        }
        let cap = room.min(1e12) as u64;
        let pick = rng.gen_range(0..=cap);
        counts[n - 1] = pick;
        budget -= pick as f64 * unit;
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub case: Theorem8Case,
    pub checked: usize,
    pub violations: Vec<Theorem8Outcome>,
}

/// `trials` random premise-satisfying inputs for one case, all checked.
pub fn theorem8_suite<R: Rng>(rng: &mut R, case: Theorem8Case, trials: usize) -> Result<SuiteSummary> {
    let mut violations = Vec::new();
    for _ in 0..trials {
        let q = rng.gen_range(4..=30);
        let counts = random_premise_counts(rng, q, case, 12);
        let outcome = theorem8_bound(q, &counts, case)?;
        debug_assert!(outcome.premise_holds);
        if outcome.premise_holds && !outcome.verified {
            violations.push(outcome);
        }
    }
    Ok(SuiteSummary { case, checked: trials, violations })
}
