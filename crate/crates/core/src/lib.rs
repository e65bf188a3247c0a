//! Lower bounds on the growth rate of subshifts computed from the sizes of
//! their forbidden patterns, with an exact transfer-matrix oracle over ℤ.
//!
//! The entry point for bounds is [`solver::solve_beta`]: given a
//! [`SizeProfile`] (alphabet size plus how many forbidden patterns there are
//! of each size) it returns the largest β with
//! `|A| − Σ weight(|f|)·β^{1−|f|} ≥ β`, which lower-bounds the growth rate of
//! the subshift. [`oracle`] checks such bounds against explicit word sets.

pub mod applications;
pub mod cli;
pub mod error;
mod float_repr;
pub mod oracle;
pub mod roots;
pub mod series;
pub mod solver;

pub use error::{Error, Result};
pub use roots::largest_real_root;
pub use series::{evaluate_potential, min_convergent_beta, FamilyTerm, PotentialEvaluation, SizeProfile, WeightMode};
pub use solver::{solve_beta, solve_pavlov_k, verify_condition, BetaSolution, ConditionCheck, ConditionMode, PavlovResult};
