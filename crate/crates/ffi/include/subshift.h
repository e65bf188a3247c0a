#ifndef SUBSHIFT_H
#define SUBSHIFT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Weight `s` per pattern of size `s`.
#define SB_MODE_GENERAL 0

// Weight 1 per pattern.
#define SB_MODE_Z_CONNECTED 1

// Weight `c0 + c1*s`.
#define SB_MODE_CUSTOM 2

#define SB_INFEASIBLE_NONE 0

#define SB_INFEASIBLE_SERIES_DIVERGES 1

#define SB_INFEASIBLE_RESIDUAL_BELOW_THRESHOLD 2

typedef enum SbStatus {
  SB_STATUS_OK = 0,
  SB_STATUS_NULL_POINTER = 1,
  SB_STATUS_INVALID_UTF8 = 2,
  SB_STATUS_PARSE = 3,
  SB_STATUS_INVALID_INPUT = 4,
  SB_STATUS_DOMAIN = 5,
  SB_STATUS_UNSUPPORTED = 6,
  SB_STATUS_RESOURCE = 7,
  SB_STATUS_NO_ROOT = 8,
  SB_STATUS_INFEASIBLE = 9,
  SB_STATUS_PANIC = 10,
} SbStatus;

// Opaque size profile.
typedef struct SbProfile SbProfile;

// Opaque forbidden-word set.
typedef struct SbWordSet SbWordSet;

typedef struct SbBetaSolution {
  bool feasible;
  double beta_star;
  double beta_low;
  double residual_at_star;
  double g_minimizer;
  double peak_residual;
  double entropy_nat;
  double entropy_log2;
  uint32_t iterations;
  // One of the `SB_INFEASIBLE_*` constants.
  uint32_t infeasibility;
} SbBetaSolution;

typedef struct SbPavlovResult {
  uint64_t k_best;
  double beta_witness;
  double margin;
} SbPavlovResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *sb_version(void);

// Message of the last failing call on this thread, or NULL. The pointer is
// valid until the next failing call on the same thread.
const char *sb_last_error(void);

// Creates an empty profile (the full shift) over `alphabet_size` letters.
//
// # Safety
// `out` must be a valid pointer to writable storage.
enum SbStatus sb_profile_new(uint32_t alphabet_size, struct SbProfile **out);

// Parses a profile from JSON.
//
// # Safety
// `json` must be NUL-terminated; `out` must be writable.
enum SbStatus sb_profile_from_json(const char *json, struct SbProfile **out);

// Appends one family term. The profile is unchanged when the term is invalid.
//
// # Safety
// `profile` must come from `sb_profile_new` or `sb_profile_from_json`.
enum SbStatus sb_profile_add_term(struct SbProfile *profile,
                                  double kappa,
                                  double rho,
                                  uint32_t degree,
                                  uint64_t n_start,
                                  uint64_t size_slope,
                                  int64_t size_offset,
                                  bool finite);

// Releases a profile. NULL is ignored.
//
// # Safety
// `profile` must not be used after this call.
void sb_profile_free(struct SbProfile *profile);

// `Φ(β)` under a weight mode. `converged` is false when the series diverges,
// in which case `value` is `-inf`.
//
// # Safety
// Handles and output pointers must be valid.
enum SbStatus sb_evaluate_potential(const struct SbProfile *profile,
                                    uint32_t mode,
                                    double c0,
                                    double c1,
                                    double beta,
                                    double *value,
                                    bool *converged);

// Boundary of the convergence domain of the potential.
//
// # Safety
// Handles and output pointers must be valid.
enum SbStatus sb_min_convergent_beta(const struct SbProfile *profile, double *out);

// Largest β satisfying the condition. `strict_margin == 0` selects the
// non-strict condition; a positive value requires `Φ(β) ≥ strict_margin`.
// An infeasible profile is reported through `out->feasible`, not the status.
//
// # Safety
// Handles and output pointers must be valid.
enum SbStatus sb_solve_beta(const struct SbProfile *profile,
                            uint32_t mode,
                            double c0,
                            double c1,
                            double strict_margin,
                            struct SbBetaSolution *out);

// Best integer `k` in the classical single-size comparison.
//
// # Safety
// Handles and output pointers must be valid.
enum SbStatus sb_solve_pavlov(const struct SbProfile *profile, struct SbPavlovResult *out);

// Largest real root of `coeffs[0] x^{len-1} + ... + coeffs[len-1]`.
//
// # Safety
// `coeffs` must point to `len` readable doubles.
enum SbStatus sb_largest_real_root(const double *coeffs, uintptr_t len, double *out);

// Parses a word set `{"alphabet_size": q, "forbidden_words": [...]}`.
//
// # Safety
// `json` must be NUL-terminated; `out` must be writable.
enum SbStatus sb_wordset_from_json(const char *json, struct SbWordSet **out);

// Releases a word set. NULL is ignored.
//
// # Safety
// `ws` must not be used after this call.
void sb_wordset_free(struct SbWordSet *ws);

// Number of admissible words of length `n` by direct enumeration.
//
// # Safety
// Handles and output pointers must be valid.
enum SbStatus sb_count_admissible_words(const struct SbWordSet *ws, uint32_t n, uint64_t *out);

// Exponential growth rate of the shift from its transfer automaton.
//
// # Safety
// Handles and output pointers must be valid.
enum SbStatus sb_growth_transfer_matrix(const struct SbWordSet *ws, double *out);

// Additive constant `C` for incompressibility rate `d` and growth `beta`.
//
// # Safety
// `out` must be writable.
enum SbStatus sb_kolmogorov_constant(double d, double beta, double *out);

// Binary periodicity-forcing condition for constant `c`. A divergent series
// gives `holds = false` and `residual = -inf`.
//
// # Safety
// Output pointers must be writable.
enum SbStatus sb_aperiodic_check_eq7(uint64_t c, double beta, bool *holds, double *residual);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SUBSHIFT_H */
