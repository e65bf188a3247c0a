//! C ABI over `subshift-core`.
//!
//! Profiles and word sets are opaque heap handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns an
//! [`SbStatus`]; on failure the message is available from [`sb_last_error`]
//! on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use subshift_core::applications::{aperiodic_check_eq7, kolmogorov_constant, KolmogorovQuery};
use subshift_core::oracle::{count_admissible_words, growth_transfer_matrix, WordSet};
use subshift_core::series::Potential;
use subshift_core::solver::Infeasibility;
use subshift_core::{
    largest_real_root, min_convergent_beta, solve_beta, solve_pavlov_k, ConditionMode, Error, FamilyTerm,
    SizeProfile, WeightMode,
};

/// Weight `s` per pattern of size `s`.
pub const SB_MODE_GENERAL: u32 = 0;
/// Weight 1 per pattern.
pub const SB_MODE_Z_CONNECTED: u32 = 1;
/// Weight `c0 + c1*s`.
pub const SB_MODE_CUSTOM: u32 = 2;

pub const SB_INFEASIBLE_NONE: u32 = 0;
pub const SB_INFEASIBLE_SERIES_DIVERGES: u32 = 1;
pub const SB_INFEASIBLE_RESIDUAL_BELOW_THRESHOLD: u32 = 2;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Domain = 5,
    Unsupported = 6,
    Resource = 7,
    NoRoot = 8,
    Infeasible = 9,
    Panic = 10,
}

/// Opaque size profile.
pub struct SbProfile(SizeProfile);

/// Opaque forbidden-word set.
pub struct SbWordSet(WordSet);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SbBetaSolution {
    pub feasible: bool,
    pub beta_star: f64,
    pub beta_low: f64,
    pub residual_at_star: f64,
    pub g_minimizer: f64,
    pub peak_residual: f64,
    pub entropy_nat: f64,
    pub entropy_log2: f64,
    pub iterations: u32,
    /// One of the `SB_INFEASIBLE_*` constants.
    pub infeasibility: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SbPavlovResult {
    pub k_best: u64,
    pub beta_witness: f64,
    pub margin: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> SbStatus {
    match err {
        Error::Domain(_) => SbStatus::Domain,
        Error::InvalidProfile(_) | Error::InvalidInput(_) => SbStatus::InvalidInput,
        Error::Unsupported(_) => SbStatus::Unsupported,
        Error::Resource(_) => SbStatus::Resource,
        Error::NoRoot(_) => SbStatus::NoRoot,
        Error::Infeasible(_) => SbStatus::Infeasible,
        Error::Parse(_) => SbStatus::Parse,
    }
}

struct Fail(SbStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SbStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status and a stored message.
fn guard<F: FnOnce() -> Result<(), Fail>>(body: F) -> SbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SbStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            SbStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(SbStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn profile_arg<'a>(p: *const SbProfile) -> Result<&'a SizeProfile, Fail> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null("profile"))
}

unsafe fn wordset_arg<'a>(p: *const SbWordSet) -> Result<&'a WordSet, Fail> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null("word set"))
}

fn mode_arg(mode: u32, c0: f64, c1: f64) -> Result<WeightMode, Fail> {
    match mode {
        SB_MODE_GENERAL => Ok(WeightMode::General),
        SB_MODE_Z_CONNECTED => Ok(WeightMode::ZConnected),
        SB_MODE_CUSTOM => Ok(WeightMode::Custom { c0, c1 }),
        other => Err(Fail(SbStatus::InvalidInput, format!("unknown weight mode {other}"))),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failing call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates an empty profile (the full shift) over `alphabet_size` letters.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sb_profile_new(alphabet_size: u32, out: *mut *mut SbProfile) -> SbStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let profile = SizeProfile::full_shift(alphabet_size);
        profile.validate()?;
        *out = Box::into_raw(Box::new(SbProfile(profile)));
        Ok(())
    })
}

/// Parses a profile from JSON.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_profile_from_json(json: *const c_char, out: *mut *mut SbProfile) -> SbStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let profile = SizeProfile::from_json(str_arg(json, "json")?)?;
        *out = Box::into_raw(Box::new(SbProfile(profile)));
        Ok(())
    })
}

/// Appends one family term. The profile is unchanged when the term is invalid.
///
/// # Safety
/// `profile` must come from `sb_profile_new` or `sb_profile_from_json`.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn sb_profile_add_term(
    profile: *mut SbProfile,
    kappa: f64,
    rho: f64,
    degree: u32,
    n_start: u64,
    size_slope: u64,
    size_offset: i64,
    finite: bool,
) -> SbStatus {
    guard(|| {
        let handle = profile.as_mut().ok_or_else(|| null("profile"))?;
        let mut term = FamilyTerm::family(kappa, rho, degree, n_start, size_slope, size_offset);
        term.finite = finite;
        let candidate = handle.0.clone().with_term(term);
        candidate.validate()?;
        handle.0 = candidate;
        Ok(())
    })
}

/// Releases a profile. NULL is ignored.
///
/// # Safety
/// `profile` must not be used after this call.
#[no_mangle]
pub unsafe extern "C" fn sb_profile_free(profile: *mut SbProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// `Φ(β)` under a weight mode. `converged` is false when the series diverges,
/// in which case `value` is `-inf`.
///
/// # Safety
/// Handles and output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sb_evaluate_potential(
    profile: *const SbProfile,
    mode: u32,
    c0: f64,
    c1: f64,
    beta: f64,
    value: *mut f64,
    converged: *mut bool,
) -> SbStatus {
    guard(|| {
        let profile = profile_arg(profile)?;
        let value = out_arg(value, "value")?;
        let converged = out_arg(converged, "converged")?;
        let eval = Potential::new(profile, mode_arg(mode, c0, c1)?)?.evaluate(beta)?;
        *value = eval.value;
        *converged = eval.converged;
        Ok(())
    })
}

/// Boundary of the convergence domain of the potential.
///
/// # Safety
/// Handles and output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sb_min_convergent_beta(profile: *const SbProfile, out: *mut f64) -> SbStatus {
    guard(|| {
        let profile = profile_arg(profile)?;
        profile.validate()?;
        *out_arg(out, "out")? = min_convergent_beta(profile);
        Ok(())
    })
}

/// Largest β satisfying the condition. `strict_margin == 0` selects the
/// non-strict condition; a positive value requires `Φ(β) ≥ strict_margin`.
/// An infeasible profile is reported through `out->feasible`, not the status.
///
/// # Safety
/// Handles and output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sb_solve_beta(
    profile: *const SbProfile,
    mode: u32,
    c0: f64,
    c1: f64,
    strict_margin: f64,
    out: *mut SbBetaSolution,
) -> SbStatus {
    guard(|| {
        let profile = profile_arg(profile)?;
        let out = out_arg(out, "out")?;
        let cond = if strict_margin == 0.0 {
            ConditionMode::NonStrict
        } else {
            ConditionMode::Strict { margin: strict_margin }
        };
        let s = solve_beta(profile, mode_arg(mode, c0, c1)?, cond)?;
        *out = SbBetaSolution {
            feasible: s.feasible,
            beta_star: s.beta_star,
            beta_low: s.beta_low,
            residual_at_star: s.residual_at_star,
            g_minimizer: s.g_minimizer,
            peak_residual: s.peak_residual,
            entropy_nat: s.entropy_nat,
            entropy_log2: s.entropy_log2,
            iterations: s.iterations,
            infeasibility: match s.infeasibility {
                None => SB_INFEASIBLE_NONE,
                Some(Infeasibility::SeriesNeverConverges) => SB_INFEASIBLE_SERIES_DIVERGES,
                Some(Infeasibility::ResidualBelowThreshold) => SB_INFEASIBLE_RESIDUAL_BELOW_THRESHOLD,
            },
        };
        Ok(())
    })
}

/// Best integer `k` in the classical single-size comparison.
///
/// # Safety
/// Handles and output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sb_solve_pavlov(profile: *const SbProfile, out: *mut SbPavlovResult) -> SbStatus {
    guard(|| {
        let profile = profile_arg(profile)?;
        let out = out_arg(out, "out")?;
        let r = solve_pavlov_k(profile)?;
        *out = SbPavlovResult { k_best: r.k_best, beta_witness: r.beta_witness, margin: r.margin };
        Ok(())
    })
}

/// Largest real root of `coeffs[0] x^{len-1} + ... + coeffs[len-1]`.
///
/// # Safety
/// `coeffs` must point to `len` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn sb_largest_real_root(coeffs: *const f64, len: usize, out: *mut f64) -> SbStatus {
    guard(|| {
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        let coeffs = std::slice::from_raw_parts(coeffs, len);
        *out_arg(out, "out")? = largest_real_root(coeffs)?;
        Ok(())
    })
}

/// Parses a word set `{"alphabet_size": q, "forbidden_words": [...]}`.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_wordset_from_json(json: *const c_char, out: *mut *mut SbWordSet) -> SbStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let ws = WordSet::from_json(str_arg(json, "json")?)?;
        *out = Box::into_raw(Box::new(SbWordSet(ws)));
        Ok(())
    })
}

/// Releases a word set. NULL is ignored.
///
/// # Safety
/// `ws` must not be used after this call.
#[no_mangle]
pub unsafe extern "C" fn sb_wordset_free(ws: *mut SbWordSet) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Number of admissible words of length `n` by direct enumeration.
///
/// # Safety
/// Handles and output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sb_count_admissible_words(ws: *const SbWordSet, n: u32, out: *mut u64) -> SbStatus {
    guard(|| {
        let ws = wordset_arg(ws)?;
        let out = out_arg(out, "out")?;
        let count = count_admissible_words(ws, n as usize)?;
        *out = u64::try_from(count).map_err(|_| Fail(SbStatus::Resource, format!("count {count} exceeds 64 bits")))?;
        Ok(())
    })
}

/// Exponential growth rate of the shift from its transfer automaton.
///
/// # Safety
/// Handles and output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sb_growth_transfer_matrix(ws: *const SbWordSet, out: *mut f64) -> SbStatus {
    guard(|| {
        let ws = wordset_arg(ws)?;
        *out_arg(out, "out")? = growth_transfer_matrix(ws)?;
        Ok(())
    })
}

/// Additive constant `C` for incompressibility rate `d` and growth `beta`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_kolmogorov_constant(d: f64, beta: f64, out: *mut f64) -> SbStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = kolmogorov_constant(KolmogorovQuery { d, beta })?.c;
        Ok(())
    })
}

/// Binary periodicity-forcing condition for constant `c`. A divergent series
/// gives `holds = false` and `residual = -inf`.
///
/// # Safety
/// Output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_aperiodic_check_eq7(c: u64, beta: f64, holds: *mut bool, residual: *mut f64) -> SbStatus {
    guard(|| {
        let holds = out_arg(holds, "holds")?;
        let residual = out_arg(residual, "residual")?;
        let check = aperiodic_check_eq7(c, beta)?;
        *holds = check.holds;
        *residual = check.residual;
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_is_thread_local() {
        unsafe {
            let mut p = ptr::null_mut();
            assert_eq!(sb_profile_new(1, &mut p), SbStatus::InvalidInput);
        }
        assert!(!sb_last_error().is_null());
        let other = std::thread::spawn(|| sb_last_error().is_null()).join().unwrap();
        assert!(other);
    }

    #[test]
    fn panics_become_status() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, SbStatus::Panic);
        let msg = unsafe { CStr::from_ptr(sb_last_error()) }.to_str().unwrap();
        assert_eq!(msg, "panic: boom");
    }
}
