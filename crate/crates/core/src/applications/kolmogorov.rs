use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{FamilyTerm, SizeProfile};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KolmogorovQuery {
    pub d: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KolmogorovConstant {
    /// Additive constant, logarithms in base 2.
    pub c: f64,
    /// `2 − 2^{1−C+d}β/(β − 2^d) − β`.
    pub residual: f64,
}

impl KolmogorovQuery {
    fn validate(&self) -> Result<()> {
        let KolmogorovQuery { d, beta } = *self;
        if !(d > 0.0 && d < 1.0) {
            return Err(Error::Domain(format!("d must lie in (0, 1), got {d}")));
        }
        let floor = d.exp2();
        if !(beta > floor && beta < 2.0) {
            return Err(Error::Domain(format!("beta must lie in (2^d, 2) = ({floor}, 2), got {beta}")));
        }
        Ok(())
    }
}

/// `C = 1 + d + log2(β/((2 − β)(β − 2^d)))`, for which at most `2^{1+dn−C}`
/// binary words of each length `n` have complexity `≤ dn − C`.
pub fn kolmogorov_constant(q: KolmogorovQuery) -> Result<KolmogorovConstant> {
    q.validate()?;
    let KolmogorovQuery { d, beta } = q;
    let c = 1.0 + d + (beta / ((2.0 - beta) * (beta - d.exp2()))).log2();
    let residual = 2.0 - (1.0 - c + d).exp2() * beta / (beta - d.exp2()) - beta;
    Ok(KolmogorovConstant { c, residual })
}

/// The forbidden family as a profile: `2^{1+dn−C}` words of length `n ≥ 1`.
pub fn kolmogorov_profile(d: f64, c: f64) -> SizeProfile {
    SizeProfile::new(2, vec![FamilyTerm::family((1.0 - c).exp2(), d.exp2(), 0, 1, 1, 0)])
}

/// Cell-centred `n × n` grid over the valid region `0 < d < 1`, `2^d < β < 2`.
pub fn kolmogorov_grid(n: usize) -> Vec<KolmogorovQuery> {
    let mut grid = Vec::with_capacity(n * n);
    for i in 0..n {
        let d = (i as f64 + 0.5) / n as f64;
        let floor = d.exp2();
        for j in 0..n {
            let beta = floor + (2.0 - floor) * (j as f64 + 0.5) / n as f64;
            grid.push(KolmogorovQuery { d, beta });
        }
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{evaluate_potential, WeightMode};

    /// C solving `2 − Σ_{n≥1} 2^{1+dn−C}β^{1−n} = β` by bisection on a truncated sum.
    fn tangent_c(d: f64, beta: f64) -> f64 {
        let term = |n: i32, c: f64| ((1.0 + d * n as f64 - c) * 2f64.ln() + (1 - n) as f64 * beta.ln()).exp();
        let residual = |c: f64| 2.0 - (1..5000).map(|n| term(n, c)).sum::<f64>() - beta;
        let (mut lo, mut hi) = (0.0, 64.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if residual(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn half_and_one_and_a_half() {
        let r = kolmogorov_constant(KolmogorovQuery { d: 0.5, beta: 1.5 }).unwrap();
        assert!((r.c - tangent_c(0.5, 1.5)).abs() < 1e-9, "{}", r.c);
        assert!((r.c - 6.62807).abs() < 1e-5, "{}", r.c);
        assert!(r.residual.abs() <= 1e-9);
    }

    #[test]
    fn edges_of_the_region() {
        let r = kolmogorov_constant(KolmogorovQuery { d: 0.01, beta: 1.5 }).unwrap();
        assert!(r.residual.abs() <= 1e-9);
        let r = kolmogorov_constant(KolmogorovQuery { d: 0.5, beta: 1.999 }).unwrap();
        assert!(r.c > 10.0);
        assert!(r.residual.abs() <= 1e-6);
    }

    #[test]
    fn grid_identity() {
        let grid = kolmogorov_grid(20);
        assert_eq!(grid.len(), 400);
        for q in grid {
            assert!(kolmogorov_constant(q).unwrap().residual.abs() <= 1e-9, "{q:?}");
        }
    }

    #[test]
    fn domain() {
        assert!(kolmogorov_constant(KolmogorovQuery { d: 0.5, beta: 1.4 }).is_err());
        assert!(kolmogorov_constant(KolmogorovQuery { d: 0.5, beta: 2.0 }).is_err());
        assert!(kolmogorov_constant(KolmogorovQuery { d: 1.0, beta: 1.5 }).is_err());
        assert!(kolmogorov_constant(KolmogorovQuery { d: 0.0, beta: 1.5 }).is_err());
    }

    #[test]
    fn series_engine_agrees() {
        let q = KolmogorovQuery { d: 0.3, beta: 1.7 };
        let k = kolmogorov_constant(q).unwrap();
        let phi = evaluate_potential(&kolmogorov_profile(q.d, k.c), WeightMode::ZConnected, q.beta).unwrap();
        assert!(phi.value.abs() < 1e-9, "{}", phi.value);
    }
}
