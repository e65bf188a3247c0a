//! Largest positive real root of a real polynomial by grid scan plus bisection.
//!
//! Used to cross-check the algebraic constants quoted for the size-set
//! theorems. Roots of even multiplicity produce no sign change and are not
//! located.

use crate::error::{Error, Result};

/// Number of grid cells scanned over `(0, bound]`.
pub const SCAN_POINTS: usize = 10_000;

/// Absolute tolerance of the bisection stage.
pub const ROOT_TOL: f64 = 1e-10;

/// Horner evaluation; `coeffs` in descending degree.
pub fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Cauchy bound `1 + max |cᵢ / c_lead|` on the modulus of every root.
pub fn cauchy_bound(coeffs: &[f64]) -> f64 {
    let lead = coeffs[0];
    1.0 + coeffs[1..].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max)
}

/// Largest real root in `(0, bound]`, coefficients in descending degree.
pub fn largest_real_root(coeffs: &[f64]) -> Result<f64> {
    let Some(&lead) = coeffs.first() else {
        return Err(Error::Domain("empty coefficient list".into()));
    };
    if lead == 0.0 || !lead.is_finite() {
        return Err(Error::Domain("leading coefficient must be nonzero".into()));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Domain("coefficients must be finite".into()));
    }
    if coeffs.len() == 1 {
        return Err(Error::NoRoot("constant polynomial".into()));
    }

    let bound = cauchy_bound(coeffs);
    let step = bound / SCAN_POINTS as f64;
    let mut hi = bound;
    let mut f_hi = eval_poly(coeffs, hi);
    if f_hi == 0.0 {
        return Ok(hi);
    }
    for k in (0..SCAN_POINTS).rev() {
        let lo = step * k as f64;
        let f_lo = eval_poly(coeffs, lo);
        if f_lo == 0.0 && k > 0 {
            return Ok(lo);
        }
        if f_lo.signum() != f_hi.signum() {
            return Ok(bisect(coeffs, lo, hi, f_lo));
        }
        hi = lo;
        f_hi = f_lo;
    }
    Err(Error::NoRoot(format!("no sign change on (0, {bound}]")))
}

fn bisect(coeffs: &[f64], mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let sign_lo = f_lo.signum();
    // Run well past ROOT_TOL; the interval stops shrinking at one ulp.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = eval_poly(coeffs, mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    debug_assert!(hi - lo <= ROOT_TOL);
    0.5 * (lo + hi)
}
