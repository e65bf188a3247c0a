//! Size profiles and the potential function
//! `Φ(β) = |A| − Σ_f weight(|f|)·β^{1−|f|} − β`.
//!
//! A profile never stores pattern contents, only how many forbidden patterns
//! there are of each size. Sizes come either as finite entries or as
//! parametric families indexed by `n ≥ n₀` with
//!
//! ```text
//! count(n) = κ · n^p · ρ^n,      size(n) = σ·n + τ.
//! ```
//!
//! For a family, `Σ_n w(size(n))·count(n)·β^{1−size(n)}` is a polynomial
//! times a geometric series in `x = ρ/β^σ`, so every infinite family is
//! summed in closed form. The tail starting at `n₀` is obtained by shifting
//! the polynomial to start at zero, which keeps every summand positive and
//! avoids subtracting a head partial sum from the full series.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Highest count-polynomial degree accepted on input.
pub const MAX_INPUT_DEGREE: u32 = 2;

/// One finite entry or one infinite family of forbidden-pattern sizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyTerm {
    /// Count coefficient κ.
    pub kappa: f64,
    /// Count base ρ.
    pub rho: f64,
    /// Count polynomial degree p.
    pub degree: u32,
    /// First family index n₀.
    pub n_start: u64,
    /// Size slope σ.
    pub size_slope: u64,
    /// Size offset τ.
    pub size_offset: i64,
    /// When set, the family is the single index `n = n_start`.
    pub finite: bool,
}

impl FamilyTerm {
    /// `count` forbidden patterns, all of size `size`.
    pub fn finite(count: f64, size: u64) -> Self {
        FamilyTerm {
            kappa: count,
            rho: 1.0,
            degree: 0,
            n_start: size,
            size_slope: 1,
            size_offset: 0,
            finite: true,
        }
    }

    /// At most one pattern of each size `first, first + step, first + 2·step, …`.
    pub fn one_per_size(first: u64, step: u64) -> Self {
        assert!(first >= 1 && step >= 1, "sizes must be positive");
        let n_start = (first / step).max(1);
        FamilyTerm {
            kappa: 1.0,
            rho: 1.0,
            degree: 0,
            n_start,
            size_slope: step,
            size_offset: first as i64 - (step * n_start) as i64,
            finite: false,
        }
    }

    /// A general infinite family `κ·n^p·ρ^n` patterns of size `σ·n + τ`, `n ≥ n₀`.
    pub fn family(kappa: f64, rho: f64, degree: u32, n_start: u64, size_slope: u64, size_offset: i64) -> Self {
        FamilyTerm {
            kappa,
            rho,
            degree,
            n_start,
            size_slope,
            size_offset,
            finite: false,
        }
    }

    pub fn size(&self, n: u64) -> i64 {
        self.size_slope as i64 * n as i64 + self.size_offset
    }

    pub fn count(&self, n: u64) -> f64 {
        self.kappa * (n as f64).powi(self.degree as i32) * self.rho.powf(n as f64)
    }

    /// Smallest pattern size produced by this term.
    pub fn min_size(&self) -> i64 {
        self.size(self.n_start)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree > MAX_INPUT_DEGREE {
            return Err(Error::Unsupported(format!(
                "count polynomial degree {} exceeds the supported maximum {MAX_INPUT_DEGREE}",
                self.degree
            )));
        }
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            return Err(Error::InvalidProfile(format!("kappa must be a positive real, got {}", self.kappa)));
        }
        if !(self.rho.is_finite() && self.rho > 0.0) {
            return Err(Error::InvalidProfile(format!("rho must be a positive real, got {}", self.rho)));
        }
        if self.n_start < 1 {
            return Err(Error::InvalidProfile("n_start must be at least 1".into()));
        }
        if self.size_slope < 1 {
            return Err(Error::InvalidProfile("size_slope must be at least 1".into()));
        }
        if self.min_size() < 1 {
            return Err(Error::InvalidProfile(format!(
                "first pattern size {} is not positive (empty patterns are not allowed)",
                self.min_size()
            )));
        }
        Ok(())
    }
}

/// Alphabet size plus the multiset of forbidden-pattern sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SizeProfile {
    pub alphabet_size: u32,
    pub terms: Vec<FamilyTerm>,
}

impl SizeProfile {
    pub fn new(alphabet_size: u32, terms: Vec<FamilyTerm>) -> Self {
        SizeProfile { alphabet_size, terms }
    }

    /// The full shift over `alphabet_size` letters.
    pub fn full_shift(alphabet_size: u32) -> Self {
        SizeProfile::new(alphabet_size, Vec::new())
    }

    pub fn with_term(mut self, term: FamilyTerm) -> Self {
        self.terms.push(term);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphabet_size < 2 {
            return Err(Error::InvalidProfile(format!(
                "alphabet_size must be at least 2, got {}",
                self.alphabet_size
            )));
        }
        for (i, term) in self.terms.iter().enumerate() {
            term.validate().map_err(|e| match e {
                Error::InvalidProfile(msg) => Error::InvalidProfile(format!("terms[{i}]: {msg}")),
                Error::Unsupported(msg) => Error::Unsupported(format!("terms[{i}]: {msg}")),
                other => other,
            })?;
        }
        Ok(())
    }

    /// Parses the JSON profile format and validates it.
    pub fn from_json(text: &str) -> Result<Self> {
        let profile: SizeProfile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        profile.validate()?;
        Ok(profile)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serialization cannot fail")
    }

    /// True when some term produces a pattern of size at least 2.
    pub fn is_nontrivial(&self) -> bool {
        self.terms.iter().any(|t| !t.finite || t.min_size() >= 2)
    }

    pub fn has_infinite_terms(&self) -> bool {
        self.terms.iter().any(|t| !t.finite)
    }
}

/// The per-pattern weight in the potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightMode {
    /// `weight(s) = s`, the general-group condition.
    General,
    /// `weight(s) = 1`, for connected patterns over ℤ.
    ZConnected,
    /// `weight(s) = c0 + c1·s`, a user-supplied linear weight.
    Custom { c0: f64, c1: f64 },
}

impl WeightMode {
    /// `(c0, c1)` such that `weight(s) = c0 + c1·s`.
    pub fn coefficients(&self) -> (f64, f64) {
        match *self {
            WeightMode::General => (0.0, 1.0),
            WeightMode::ZConnected => (1.0, 0.0),
            WeightMode::Custom { c0, c1 } => (c0, c1),
        }
    }

    pub fn weight(&self, size: i64) -> f64 {
        let (c0, c1) = self.coefficients();
        c0 + c1 * size as f64
    }

    /// Checks `weight(s) ≥ 1` for every size the profile can produce.
    pub fn validate_for(&self, profile: &SizeProfile) -> Result<()> {
        let (c0, c1) = self.coefficients();
        if !(c0.is_finite() && c1.is_finite()) {
            return Err(Error::Domain("weight coefficients must be finite".into()));
        }
        for term in &profile.terms {
            if !term.finite && c1 < 0.0 {
                return Err(Error::Domain(
                    "a decreasing weight becomes smaller than 1 on an infinite family".into(),
                ));
            }
            let s = term.min_size();
            if self.weight(s) < 1.0 {
                return Err(Error::Domain(format!("weight({s}) = {} is below 1", self.weight(s))));
            }
        }
        Ok(())
    }
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightMode::General => f.write_str("general"),
            WeightMode::ZConnected => f.write_str("z"),
            WeightMode::Custom { c0, c1 } => write!(f, "custom:{c0},{c1}"),
        }
    }
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(WeightMode::General),
            "z" | "z-connected" => Ok(WeightMode::ZConnected),
            other => {
                let rest = other
                    .strip_prefix("custom:")
                    .ok_or_else(|| Error::InvalidInput(format!("unknown weight mode `{other}`")))?;
                let (a, b) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::InvalidInput("custom weight must be `custom:c0,c1`".into()))?;
                let parse = |v: &str| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidInput(format!("bad custom weight coefficient `{v}`")))
                };
                Ok(WeightMode::Custom { c0: parse(a)?, c1: parse(b)? })
            }
        }
    }
}

/// Value of the potential at one β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialEvaluation {
    /// `Φ(β)`; `-inf` when the series diverges.
    #[serde(with = "crate::float_repr")]
    pub value: f64,
    /// `Σ weight·count·β^{1−size}`; `+inf` when it diverges.
    #[serde(with = "crate::float_repr")]
    pub sum_value: f64,
    pub converged: bool,
    pub min_convergent_beta: f64,
}

/// Largest `ρ^{1/σ}` over infinite families, 0 when every term is finite.
/// The potential converges exactly for β strictly above this value.
pub fn min_convergent_beta(profile: &SizeProfile) -> f64 {
    profile
        .terms
        .iter()
        .filter(|t| !t.finite)
        .map(|t| (t.rho.ln() / t.size_slope as f64).exp())
        .fold(0.0, f64::max)
}

/// Evaluates `Φ(β)` for a profile under a weight mode.
pub fn evaluate_potential(profile: &SizeProfile, mode: WeightMode, beta: f64) -> Result<PotentialEvaluation> {
    Potential::new(profile, mode)?.evaluate(beta)
}

// Polynomials are coefficient vectors, lowest degree first.

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `m ↦ P(m + shift)`.
fn poly_shift(p: &[f64], shift: f64) -> Vec<f64> {
    let mut out = vec![0.0; p.len()];
    for (k, &c) in p.iter().enumerate() {
        // (m + shift)^k = Σ_j C(k, j) shift^{k-j} m^j
        let mut binom = 1.0;
        for j in 0..=k {
            out[j] += c * binom * shift.powi((k - j) as i32);
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
    }
    out
}

/// `Σ_{m≥0} m^j x^m` for `0 ≤ x < 1`, `j ≤ 4` (Eulerian-polynomial closed forms).
fn moment_series(j: usize, x: f64) -> f64 {
    let r = 1.0 - x;
    match j {
        0 => 1.0 / r,
        1 => x / (r * r),
        2 => x * (1.0 + x) / (r * r * r),
        3 => x * (1.0 + x * (4.0 + x)) / (r * r * r * r),
        4 => x * (1.0 + x * (11.0 + x * (11.0 + x))) / (r * r * r * r * r),
        _ => unreachable!("polynomial degree above 4 is rejected at construction"),
    }
}

/// `Σ_{m≥0} Q(m) x^m` for a polynomial `Q` of degree ≤ 4.
fn poly_geometric_sum(q: &[f64], x: f64) -> f64 {
    q.iter().enumerate().map(|(j, &c)| if c == 0.0 { 0.0 } else { c * moment_series(j, x) }).sum()
}

#[derive(Debug, Clone)]
struct PreparedTerm {
    finite: bool,
    kappa: f64,
    ln_rho: f64,
    n_start: u64,
    slope: f64,
    first_size: i64,
    degree: u32,
    /// `m ↦ (m+n₀)^p · w(size(m+n₀))`
    sum_poly: Vec<f64>,
    /// `m ↦ (m+n₀)^p · w(size(m+n₀)) · (1 − size(m+n₀))`
    deriv_poly: Vec<f64>,
    weight_first: f64,
}

impl PreparedTerm {
    fn new(term: &FamilyTerm, mode: WeightMode) -> Self {
        let (c0, c1) = mode.coefficients();
        let sigma = term.size_slope as f64;
        let tau = term.size_offset as f64;
        // n^p
        let mut monomial = vec![0.0; term.degree as usize + 1];
        monomial[term.degree as usize] = 1.0;
        // w(σn + τ) = (c0 + c1 τ) + c1 σ n
        let weight = vec![c0 + c1 * tau, c1 * sigma];
        // 1 − (σn + τ)
        let exponent = vec![1.0 - tau, -sigma];
        let sum_n = poly_mul(&monomial, &weight);
        let deriv_n = poly_mul(&sum_n, &exponent);
        let shift = term.n_start as f64;
        PreparedTerm {
            finite: term.finite,
            kappa: term.kappa,
            ln_rho: term.rho.ln(),
            n_start: term.n_start,
            slope: sigma,
            first_size: term.min_size(),
            degree: term.degree,
            sum_poly: poly_shift(&sum_n, shift),
            deriv_poly: poly_shift(&deriv_n, shift),
            weight_first: mode.weight(term.min_size()),
        }
    }

    /// `ln(ρ^{n₀} · β^{1 − size(n₀)})`, the log of the first summand's β-dependence.
    fn ln_head(&self, ln_beta: f64) -> f64 {
        let beta_part = if self.first_size == 1 { 0.0 } else { (1 - self.first_size) as f64 * ln_beta };
        self.n_start as f64 * self.ln_rho + beta_part
    }

    /// `ln x` with `x = ρ / β^σ`.
    fn ln_ratio(&self, ln_beta: f64) -> f64 {
        self.ln_rho - self.slope * ln_beta
    }

    fn head_count(&self) -> f64 {
        self.kappa * (self.n_start as f64).powi(self.degree as i32)
    }

    /// Returns `None` when the family diverges at this β.
    fn sum(&self, ln_beta: f64) -> Option<f64> {
        if self.finite {
            return Some(self.weight_first * self.head_count() * self.ln_head(ln_beta).exp());
        }
        let ln_x = self.ln_ratio(ln_beta);
        if ln_x >= 0.0 {
            return None;
        }
        let x = ln_x.exp();
        if x >= 1.0 {
            return None;
        }
        Some(self.kappa * self.ln_head(ln_beta).exp() * poly_geometric_sum(&self.sum_poly, x))
    }

    /// Derivative of `sum` with respect to β.
    fn sum_derivative(&self, beta: f64, ln_beta: f64) -> Option<f64> {
        if self.finite {
            let s = self.first_size as f64;
            return Some(self.weight_first * self.head_count() * (1.0 - s) * self.ln_head(ln_beta).exp() / beta);
        }
        let ln_x = self.ln_ratio(ln_beta);
        if ln_x >= 0.0 {
            return None;
        }
        let x = ln_x.exp();
        if x >= 1.0 {
            return None;
        }
        Some(self.kappa * self.ln_head(ln_beta).exp() * poly_geometric_sum(&self.deriv_poly, x) / beta)
    }
}

/// A profile and weight mode validated and prepared for repeated evaluation.
#[derive(Debug, Clone)]
pub struct Potential {
    alphabet: f64,
    terms: Vec<PreparedTerm>,
    min_convergent: f64,
}

impl Potential {
    pub fn new(profile: &SizeProfile, mode: WeightMode) -> Result<Self> {
        profile.validate()?;
        mode.validate_for(profile)?;
        Ok(Potential {
            alphabet: profile.alphabet_size as f64,
            terms: profile.terms.iter().map(|t| PreparedTerm::new(t, mode)).collect(),
            min_convergent: min_convergent_beta(profile),
        })
    }

    pub fn alphabet(&self) -> f64 {
        self.alphabet
    }

    pub fn min_convergent_beta(&self) -> f64 {
        self.min_convergent
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The weighted series `Σ weight·count·β^{1−size}`, `+inf` when divergent.
    pub fn sum(&self, beta: f64) -> f64 {
        let ln_beta = beta.ln();
        let mut total = 0.0;
        for term in &self.terms {
            match term.sum(ln_beta) {
                Some(v) => total += v,
                None => return f64::INFINITY,
            }
        }
        total
    }

    /// `d/dβ` of [`Potential::sum`], `-inf` when divergent.
    pub fn sum_derivative(&self, beta: f64) -> f64 {
        let ln_beta = beta.ln();
        let mut total = 0.0;
        for term in &self.terms {
            match term.sum_derivative(beta, ln_beta) {
                Some(v) => total += v,
                None => return f64::NEG_INFINITY,
            }
        }
        total
    }

    /// `g(β) = β + sum(β)`, convex on the convergence domain.
    pub fn g(&self, beta: f64) -> f64 {
        beta + self.sum(beta)
    }

    pub fn g_derivative(&self, beta: f64) -> f64 {
        1.0 + self.sum_derivative(beta)
    }

    /// `Φ(β) = |A| − sum(β) − β`, `-inf` when divergent.
    pub fn phi(&self, beta: f64) -> f64 {
        let s = self.sum(beta);
        if s.is_infinite() {
            f64::NEG_INFINITY
        } else {
            self.alphabet - s - beta
        }
    }

    pub fn evaluate(&self, beta: f64) -> Result<PotentialEvaluation> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Domain(format!("beta must be a positive real, got {beta}")));
        }
        let sum_value = self.sum(beta);
        let converged = sum_value.is_finite();
        Ok(PotentialEvaluation {
            value: if converged { self.alphabet - sum_value - beta } else { f64::NEG_INFINITY },
            sum_value,
            converged,
            min_convergent_beta: self.min_convergent,
        })
    }
}
