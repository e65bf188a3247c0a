use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{FamilyTerm, Potential, SizeProfile, WeightMode};
use crate::solver::{solve_beta, verify_condition, ConditionMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonrepetitiveQuery {
    pub generators: u64,
}

fn check_generators(s: u64) -> Result<()> {
    if s < 2 {
        return Err(Error::Domain(format!("generator count must be at least 2, got {s}")));
    }
    Ok(())
}

/// Repetitively coloured paths on `2n` vertices: `(2s)^{2n−1}·A^n` patterns,
/// with the placement factor `2n` folded into the count and unit weight.
/// `2n(2s)^{2n−1}A^n = (n/s)·(4s²A)^n`.
pub fn nonrepetitive_profile(s: u64, alphabet: u32) -> SizeProfile {
    SizeProfile::new(alphabet, vec![path_family(s, alphabet as f64)])
}

fn path_family(s: u64, alphabet: f64) -> FamilyTerm {
    let sf = s as f64;
    FamilyTerm::family(1.0 / sf, 4.0 * sf * sf * alphabet, 1, 1, 2, 0)
}

pub const NONREPETITIVE_MODE: WeightMode = WeightMode::ZConnected;

pub fn paper_alphabet(s: u64) -> u32 {
    let sf = s as f64;
    (4.0 * sf * sf + 16.0 * sf.powf(5.0 / 3.0)).ceil() as u32
}

pub fn paper_beta(s: u64) -> f64 {
    let sf = s as f64;
    4.0 * sf * sf + 12.0 * sf.powf(5.0 / 3.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonrepetitiveBound {
    pub s: u64,
    pub alphabet: u32,
    pub beta: f64,
    pub holds: bool,
    #[serde(with = "crate::float_repr")]
    pub residual: f64,
}

/// The stated alphabet and β, checked against the displayed condition
/// `A − Σ_{n≥1} 2n(2s)^{2n−1}A^n/β^{2n−1} ≥ β`.
pub fn nonrepetitive_paper_bound(s: u64) -> Result<NonrepetitiveBound> {
    check_generators(s)?;
    let alphabet = paper_alphabet(s);
    let beta = paper_beta(s);
    let check = verify_condition(&nonrepetitive_profile(s, alphabet), NONREPETITIVE_MODE, ConditionMode::NonStrict, beta)?;
    Ok(NonrepetitiveBound { s, alphabet, beta, holds: check.holds, residual: check.residual })
}

/// Whether some β satisfies the condition for this alphabet.
pub fn nonrepetitive_feasible(s: u64, alphabet: u32) -> Result<bool> {
    check_generators(s)?;
    Ok(solve_beta(&nonrepetitive_profile(s, alphabet), NONREPETITIVE_MODE, ConditionMode::NonStrict)?.feasible)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinAlphabet {
    pub s: u64,
    pub alphabet: u32,
    pub beta_star: f64,
    /// `alphabet − 1` was checked and is infeasible.
    pub predecessor_infeasible: bool,
}

/// Smallest alphabet for which the condition has a solution, by binary
/// search; the profile is rebuilt for every candidate because the pattern
/// count grows with the alphabet.
pub fn nonrepetitive_min_alphabet(s: u64) -> Result<MinAlphabet> {
    check_generators(s)?;
    let mut lo = 2u32;
    if nonrepetitive_feasible(s, lo)? {
        return finish(s, lo);
    }
    let mut hi = paper_alphabet(s);
    while !nonrepetitive_feasible(s, hi)? {
        lo = hi;
        hi = hi
            .checked_mul(2)
            .ok_or_else(|| Error::Resource(format!("no feasible alphabet below 2^32 for s = {s}")))?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if nonrepetitive_feasible(s, mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    finish(s, hi)
}

fn finish(s: u64, alphabet: u32) -> Result<MinAlphabet> {
    let sol = solve_beta(&nonrepetitive_profile(s, alphabet), NONREPETITIVE_MODE, ConditionMode::NonStrict)?;
    let predecessor_infeasible = alphabet <= 2 || !nonrepetitive_feasible(s, alphabet - 1)?;
    Ok(MinAlphabet { s, alphabet, beta_star: sol.beta_star, predecessor_infeasible })
}

/// The stages of the closed-form estimate at `A = 4s² + 16s^{5/3}` (before
/// rounding up) and the stated β, each evaluated on its own.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma5Chain {
    pub s: u64,
    /// `Σ 2n(2s)^{2n−1}A^n/β^{2n−1}` from the series engine.
    pub direct_sum: f64,
    /// `4s Σ n x^n` with `x = (1 + 4t)/(1 + 3t)²`, `t = s^{−1/3}`, summed term by term.
    pub middle_series: f64,
    /// `4s(1 + 3t)²(1 + 4t)/(t²(2 + 9t)²)`.
    pub closed_form: f64,
    /// `4s^{5/3}`.
    pub target: f64,
    /// `A − β`, equal to `4s^{5/3}`.
    pub slack: f64,
}

impl Lemma5Chain {
    /// Ratio between the direct sum and the middle expression.
    pub fn direct_over_middle(&self) -> f64 {
        self.direct_sum / self.middle_series
    }
}

pub fn lemma5_chain(s: u64) -> Result<Lemma5Chain> {
    check_generators(s)?;
    let sf = s as f64;
    let alphabet = 4.0 * sf * sf + 16.0 * sf.powf(5.0 / 3.0);
    let beta = paper_beta(s);
    let t = sf.powf(-1.0 / 3.0);
    let x = (1.0 + 4.0 * t) / ((1.0 + 3.0 * t) * (1.0 + 3.0 * t));

    let mut middle = 0.0;
    let mut power = 1.0;
    for n in 1..=100_000u32 {
        power *= x;
        let term = n as f64 * power;
        middle += term;
        if term < 1e-18 * middle {
            break;
        }
    }
    middle *= 4.0 * sf;

    let closed = 4.0 * sf * (1.0 + 3.0 * t).powi(2) * (1.0 + 4.0 * t) / (t * t * (2.0 + 9.0 * t).powi(2));
    let profile = SizeProfile::new(alphabet.ceil() as u32, vec![path_family(s, alphabet)]);
    let pot = Potential::new(&profile, NONREPETITIVE_MODE)?;
    Ok(Lemma5Chain {
        s,
        direct_sum: pot.sum(beta),
        middle_series: middle,
        closed_form: closed,
        target: 4.0 * sf.powf(5.0 / 3.0),
        slack: alphabet - beta,
    })
}
