use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{evaluate_potential, FamilyTerm, SizeProfile, WeightMode};

/// Upper end of the linear scan in [`aperiodic_min_c`].
pub const MAX_SCAN_C: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eq7Check {
    pub c: u64,
    pub beta: f64,
    pub holds: bool,
    #[serde(with = "crate::float_repr")]
    pub residual: f64,
    pub reason: Option<String>,
}

/// Binary periodicity-forcing condition
/// `2 − Σ_{i≥1} 2Ci·2^{Ci}·β^{1−2Ci} ≥ β` through its closed form
/// `2 − 2^{1+C}β^{1+2C}C/(β^{2C} − 2^C)² − β`.
pub fn aperiodic_check_eq7(c: u64, beta: f64) -> Result<Eq7Check> {
    if c == 0 {
        return Err(Error::Domain("C must be at least 1".into()));
    }
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    let cf = c as f64;
    // Ratio of consecutive terms is 2^C/β^{2C} = r.
    let ln_r = cf * (2f64.ln() - 2.0 * beta.ln());
    if ln_r >= 0.0 {
        return Ok(Eq7Check {
            c,
            beta,
            holds: false,
            residual: f64::NEG_INFINITY,
            reason: Some(format!("series diverges: beta = {beta} is not above sqrt(2)")),
        });
    }
    // 2^{1+C}β^{1+2C}C/(β^{2C} − 2^C)² = 2Cβ·r/(1 − r)²
    let r = ln_r.exp();
    let one_minus_r = -ln_r.exp_m1();
    let sum = 2.0 * cf * beta * r / (one_minus_r * one_minus_r);
    let residual = 2.0 - sum - beta;
    Ok(Eq7Check {
        c,
        beta,
        holds: residual >= 0.0,
        residual,
        reason: if residual >= 0.0 { None } else { Some(format!("residual {residual} is negative")) },
    })
}

/// The binary family as a size profile: `2^{Ci}` patterns of size `2Ci`,
/// counted with the general weight.
pub fn eq7_profile(c: u64) -> SizeProfile {
    let rho = 2f64.powi(c as i32);
    SizeProfile::new(2, vec![FamilyTerm::family(1.0, rho, 0, 1, 2 * c, 0)])
}

/// Scan of [`aperiodic_check_eq7`] over `c_range`.
pub fn eq7_scan(beta: f64, c_range: std::ops::RangeInclusive<u64>) -> Result<Vec<Eq7Check>> {
    c_range.map(|c| aperiodic_check_eq7(c, beta)).collect()
}

/// Summary of a scan: the largest failing `C` below the first success, and
/// whether the condition then holds for every scanned `C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eq7Threshold {
    pub first_holding: Option<u64>,
    pub last_failing_below: Option<u64>,
    pub monotone: bool,
}

pub fn eq7_threshold(scan: &[Eq7Check]) -> Eq7Threshold {
    let first = scan.iter().position(|r| r.holds);
    let monotone = first.is_none_or(|i| scan[i..].iter().all(|r| r.holds));
    Eq7Threshold {
        first_holding: first.map(|i| scan[i].c),
        last_failing_below: first.and_then(|i| i.checked_sub(1)).map(|i| scan[i].c),
        monotone,
    }
}

/// `Σ_{i≥1} 2iC/β^{iC−1} = 2β^{C+1}C/(β^C − 1)²`, written in terms of
/// `t = C·ln β` so that β close to 1 and large `C` stay accurate.
pub fn appendix_term(c: u64, beta: f64) -> f64 {
    let cf = c as f64;
    let t = cf * beta.ln();
    2.0 * cf * beta / (t.exp_m1() * -(-t).exp_m1())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AperiodicQuery {
    /// Forbidden patterns already present; its alphabet is the alphabet used.
    pub base_profile: SizeProfile,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AperiodicConstant {
    pub c: u64,
    pub delta: f64,
    pub term: f64,
}

/// Smallest `C ≥ 1` whose periodicity-forcing term fits under the slack
/// `δ = |A| − Σ|f|β^{1−|f|} − β` of the base profile.
pub fn aperiodic_min_c(query: &AperiodicQuery) -> Result<AperiodicConstant> {
    let beta = query.beta;
    if !(beta.is_finite() && beta > 1.0) {
        return Err(Error::Domain(format!("beta must exceed 1, got {beta}")));
    }
    let eval = evaluate_potential(&query.base_profile, WeightMode::General, beta)?;
    let delta = eval.value;
    if !eval.converged || !(delta > 0.0) {
        return Err(Error::Infeasible(format!(
            "base profile leaves no strict slack at beta = {beta} (residual {delta})"
        )));
    }
    for c in 1..=MAX_SCAN_C {
        let term = appendix_term(c, beta);
        if term < delta {
            return Ok(AperiodicConstant { c, delta, term });
        }
    }
    Err(Error::Resource(format!("no C up to {MAX_SCAN_C} fits the slack {delta}")))
}
