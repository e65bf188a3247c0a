//! Supremum-β search, Pavlov's integer bound and point checks of the β-condition.
//!
//! `g(β) = β + Σ weight·count·β^{1−size}` is convex on the convergence
//! domain, so `{β : |A| − g(β) ≥ threshold}` is an interval. The solver
//! first locates the minimizer of `g` by bisection on the sign of `g'`, then
//! bisects for the right end of the feasible interval.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{Potential, SizeProfile, WeightMode};

/// Default ε for [`ConditionMode::Strict`].
pub const DEFAULT_STRICT_MARGIN: f64 = 1e-9;

/// Relative tolerance for the boundary bisection.
pub const BOUNDARY_REL_TOL: f64 = 1e-12;

/// Iteration cap for the boundary bisection.
pub const BOUNDARY_MAX_ITER: u32 = 60;

/// Slack (relative to |A|) under which a non-strict residual still counts as a tie.
/// Exact tangencies such as `3 − 1/(β−1) − β` at β = 2 evaluate to ±1 ulp.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Floating-point noise floor of a computed residual, relative to |A|. The
/// boundary bisections only step onto points that clear the threshold by this
/// much, so near a tangency β* stays at the minimizer instead of drifting
/// through rounding noise.
const RESIDUAL_NOISE: f64 = 1e-14;

const MINIMIZER_MAX_ITER: u32 = 200;
const EDGE_SWEEP_STEPS: u32 = 200;

/// Which inequality certifies the bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConditionMode {
    /// `Φ(β) ≥ 0`.
    NonStrict,
    /// `Φ(β) ≥ ε`.
    Strict { margin: f64 },
}

impl ConditionMode {
    pub fn strict() -> Self {
        ConditionMode::Strict { margin: DEFAULT_STRICT_MARGIN }
    }

    pub fn threshold(&self) -> f64 {
        match *self {
            ConditionMode::NonStrict => 0.0,
            ConditionMode::Strict { margin } => margin,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            ConditionMode::Strict { margin } if !(margin.is_finite() && margin > 0.0) => {
                Err(Error::Domain(format!("strict margin must be positive, got {margin}")))
            }
            _ => Ok(()),
        }
    }

    /// Feasibility test used at the minimizer, with the tie slack in non-strict mode.
    fn admits_peak(&self, residual: f64, alphabet: f64) -> bool {
        match self {
            ConditionMode::NonStrict => residual >= -TIE_TOLERANCE * alphabet.max(1.0),
            ConditionMode::Strict { margin } => residual >= *margin,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Infeasibility {
    /// Every infinite family diverges for all β ≤ |A|.
    SeriesNeverConverges,
    /// The best achievable residual is below the threshold.
    ResidualBelowThreshold,
}

impl Infeasibility {
    pub fn describe(&self) -> &'static str {
        match self {
            Infeasibility::SeriesNeverConverges => "series never converges below alphabet size",
            Infeasibility::ResidualBelowThreshold => "no beta satisfies the condition",
        }
    }
}

/// Outcome of [`solve_beta`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaSolution {
    pub feasible: bool,
    /// Supremum of feasible β (the best point found when infeasible).
    pub beta_star: f64,
    /// Left end of the feasible interval.
    pub beta_low: f64,
    #[serde(with = "crate::float_repr")]
    pub residual_at_star: f64,
    /// Minimizer of `g(β) = β + sum(β)` over `(min_convergent_beta, |A|]`.
    pub g_minimizer: f64,
    /// `Φ(g_minimizer)`, the largest residual attainable.
    #[serde(with = "crate::float_repr")]
    pub peak_residual: f64,
    pub iterations: u32,
    #[serde(with = "crate::float_repr")]
    pub entropy_nat: f64,
    #[serde(with = "crate::float_repr")]
    pub entropy_log2: f64,
    pub infeasibility: Option<Infeasibility>,
}

impl BetaSolution {
    fn infeasible(point: f64, residual: f64, iterations: u32, why: Infeasibility) -> Self {
        BetaSolution {
            feasible: false,
            beta_star: point,
            beta_low: point,
            residual_at_star: residual,
            g_minimizer: point,
            peak_residual: residual,
            iterations,
            entropy_nat: f64::NEG_INFINITY,
            entropy_log2: f64::NEG_INFINITY,
            infeasibility: Some(why),
        }
    }

    /// Entropy lower bound in the given logarithm base.
    pub fn entropy(&self, base: LogBase) -> f64 {
        match base {
            LogBase::E => self.entropy_nat,
            LogBase::Two => self.entropy_log2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    #[serde(rename = "e")]
    E,
    #[serde(rename = "2")]
    Two,
}

/// Minimizer of a convex `g` on `(left, right]` from the sign of `g'`.
/// Returns `(minimizer, iterations)`.
fn convex_minimizer(pot: &Potential, left: f64, right: f64) -> (f64, u32) {
    if pot.g_derivative(right) <= 0.0 {
        return (right, 0);
    }
    // Walk toward the left edge until g' turns negative; `hi` keeps g' > 0.
    let width = right - left;
    let mut hi = right;
    let mut lo = None;
    for k in 1..=EDGE_SWEEP_STEPS {
        let a = left + width * 0.5f64.powi(k as i32);
        if a <= left {
            break;
        }
        if pot.g_derivative(a) < 0.0 {
            lo = Some(a);
            break;
        }
        hi = a;
    }
    let Some(mut lo) = lo else {
        // g is increasing all the way down to the edge.
        return (hi, 0);
    };
    let mut iterations = 0;
    while iterations < MINIMIZER_MAX_ITER && hi - lo > 1e-15 * hi {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if pot.g_derivative(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi), iterations)
}

/// Largest `β ∈ [feasible_lo, infeasible_hi]` with `Φ(β) ≥ threshold`, assuming
/// `feasible_lo` is feasible and `infeasible_hi` is not.
fn right_boundary(pot: &Potential, threshold: f64, mut lo: f64, mut hi: f64) -> (f64, u32) {
    let threshold = threshold + RESIDUAL_NOISE * pot.alphabet().max(1.0);
    let mut iterations = 0;
    while iterations < BOUNDARY_MAX_ITER && hi - lo > BOUNDARY_REL_TOL * hi {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if pot.phi(mid) >= threshold {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, iterations)
}

/// Smallest feasible β at or left of `feasible_hi`.
fn left_boundary(pot: &Potential, threshold: f64, edge: f64, feasible_hi: f64) -> (f64, u32) {
    let threshold = threshold + RESIDUAL_NOISE * pot.alphabet().max(1.0);
    let width = feasible_hi - edge;
    let mut bad = None;
    let mut good = feasible_hi;
    for k in 1..=EDGE_SWEEP_STEPS {
        let a = edge + width * 0.5f64.powi(k as i32);
        if a <= edge {
            break;
        }
        if pot.phi(a) >= threshold {
            good = a;
        } else {
            bad = Some(a);
            break;
        }
    }
    let Some(mut lo) = bad else {
        return (good, 0);
    };
    let mut hi = good;
    let mut iterations = 0;
    while iterations < BOUNDARY_MAX_ITER && hi - lo > BOUNDARY_REL_TOL * hi {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if pot.phi(mid) >= threshold {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (hi, iterations)
}

/// Finds the supremum β satisfying `Φ(β) ≥ threshold(cond)`.
pub fn solve_beta(profile: &SizeProfile, mode: WeightMode, cond: ConditionMode) -> Result<BetaSolution> {
    cond.validate()?;
    let pot = Potential::new(profile, mode)?;
    solve_prepared(&pot, cond)
}

pub(crate) fn solve_prepared(pot: &Potential, cond: ConditionMode) -> Result<BetaSolution> {
    let alphabet = pot.alphabet();
    let threshold = cond.threshold();

    if pot.is_empty() {
        let beta = alphabet - threshold;
        return Ok(feasible_solution(pot, beta, 0.0, beta, pot.phi(beta), 0));
    }

    let edge = pot.min_convergent_beta();
    if edge >= alphabet {
        return Ok(BetaSolution::infeasible(
            alphabet,
            f64::NEG_INFINITY,
            0,
            Infeasibility::SeriesNeverConverges,
        ));
    }

    let (minimizer, min_iters) = convex_minimizer(pot, edge, alphabet);
    let peak = pot.phi(minimizer);
    if !cond.admits_peak(peak, alphabet) {
        return Ok(BetaSolution::infeasible(
            minimizer,
            peak,
            min_iters,
            Infeasibility::ResidualBelowThreshold,
        ));
    }

    let (star, star_iters) = if pot.phi(alphabet) >= threshold {
        (alphabet, 0)
    } else {
        right_boundary(pot, threshold, minimizer, alphabet)
    };
    let (low, low_iters) = left_boundary(pot, threshold, edge, minimizer);
    let iterations = min_iters + star_iters + low_iters;
    Ok(feasible_solution(pot, star, low.min(minimizer), minimizer, peak, iterations))
}

fn feasible_solution(pot: &Potential, star: f64, low: f64, minimizer: f64, peak: f64, iterations: u32) -> BetaSolution {
    BetaSolution {
        feasible: true,
        beta_star: star,
        beta_low: low,
        residual_at_star: pot.phi(star),
        g_minimizer: minimizer,
        peak_residual: peak,
        iterations,
        entropy_nat: star.ln(),
        entropy_log2: star.log2(),
        infeasibility: None,
    }
}

/// Result of [`verify_condition`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub holds: bool,
    #[serde(with = "crate::float_repr")]
    pub residual: f64,
    pub reason: Option<String>,
}

/// Point check of `Φ(β) ≥ threshold(cond)`.
///
/// In non-strict mode a residual within [`TIE_TOLERANCE`]·|A| below zero is
/// treated as an exact tie.
pub fn verify_condition(profile: &SizeProfile, mode: WeightMode, cond: ConditionMode, beta: f64) -> Result<ConditionCheck> {
    cond.validate()?;
    let pot = Potential::new(profile, mode)?;
    verify_prepared(&pot, cond, beta)
}

pub(crate) fn verify_prepared(pot: &Potential, cond: ConditionMode, beta: f64) -> Result<ConditionCheck> {
    let eval = pot.evaluate(beta)?;
    if !eval.converged {
        return Ok(ConditionCheck {
            holds: false,
            residual: eval.value,
            reason: Some(format!(
                "series diverges at beta = {beta} (converges only above {})",
                eval.min_convergent_beta
            )),
        });
    }
    let holds = cond.admits_peak(eval.value, pot.alphabet());
    Ok(ConditionCheck {
        holds,
        residual: eval.value,
        reason: if holds { None } else { Some(format!("residual {} below threshold {}", eval.value, cond.threshold())) },
    })
}

/// Outcome of [`solve_pavlov_k`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PavlovResult {
    pub k_best: u64,
    pub beta_witness: f64,
    /// `max_β |A| − Σ β^{1−|f|} − β` over `β ≥ 1` in the convergence domain.
    #[serde(with = "crate::float_repr")]
    pub margin: f64,
}

/// Largest integer strictly below `y`, with `y` snapped to a nearby integer first
/// so that a margin of exactly `k − 1` is not promoted by rounding noise.
fn largest_integer_below(y: f64) -> i64 {
    let r = y.round();
    let y = if (y - r).abs() <= TIE_TOLERANCE * y.abs().max(1.0) { r } else { y };
    y.ceil() as i64 - 1
}

/// Best integer `k` for which `|A| − Σ β^{1−|f|} > β + k − 1` has a solution.
///
/// The search runs over `β ≥ 1`; for the empty profile this gives
/// `k = |A| − 1` with witness β = 1.
pub fn solve_pavlov_k(profile: &SizeProfile) -> Result<PavlovResult> {
    let pot = Potential::new(profile, WeightMode::ZConnected)?;
    let alphabet = pot.alphabet();
    let left = pot.min_convergent_beta().max(1.0);
    if left >= alphabet && pot.min_convergent_beta() >= alphabet {
        return Ok(PavlovResult { k_best: 0, beta_witness: left, margin: f64::NEG_INFINITY });
    }
    let witness = if pot.g_derivative(left) >= 0.0 && pot.phi(left).is_finite() {
        left
    } else {
        convex_minimizer(&pot, left, alphabet).0
    };
    let margin = pot.phi(witness);
    let k = if margin.is_finite() { largest_integer_below(1.0 + margin).max(0) } else { 0 };
    Ok(PavlovResult { k_best: k as u64, beta_witness: witness, margin })
}
