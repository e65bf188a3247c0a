use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::series::{SizeProfile, WeightMode};
use crate::solver::{solve_beta, solve_pavlov_k, BetaSolution, ConditionMode, PavlovResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PavlovComparison {
    pub pavlov: PavlovResult,
    pub solution: BetaSolution,
    /// `β* > k` whenever `k ≥ 1`.
    pub dominates: bool,
}

/// Pavlov's integer bound next to the unit-weight β* for the same profile.
pub fn compare_pavlov(profile: &SizeProfile) -> Result<PavlovComparison> {
    let pavlov = solve_pavlov_k(profile)?;
    let solution = solve_beta(profile, WeightMode::ZConnected, ConditionMode::NonStrict)?;
    let dominates = pavlov.k_best == 0 || (solution.feasible && solution.beta_star > pavlov.k_best as f64);
    Ok(PavlovComparison { pavlov, solution, dominates })
}
