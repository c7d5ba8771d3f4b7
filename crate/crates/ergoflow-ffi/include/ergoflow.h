#ifndef ERGOFLOW_H
#define ERGOFLOW_H

/* Generated by cbindgen from the ergoflow-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum EfStatus {
  /**
   * Success.
   */
  EF_STATUS_OK = 0,
  /**
   * Invalid input: bad pointer, bad probability vector, bad shape, …
   */
  EF_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The request needs a dense vector above the configured cap.
   */
  EF_STATUS_CAP_EXCEEDED = 3,
  /**
   * A panic was caught at the boundary; state may be stale.
   */
  EF_STATUS_INTERNAL = 4,
} EfStatus;

/**
 * Single-system Hamiltonian: non-decreasing level energies.
 */
typedef struct EfHamiltonian EfHamiltonian;

/**
 * Diagonal ensemble state over the product eigenbasis.
 */
typedef struct EfState EfState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. Valid until
 * the next failing call on the same thread; never null.
 */
const char *ef_last_error_message(void);

/**
 * Creates a Hamiltonian from `len` level energies sorted non-decreasing.
 *
 * # Safety
 * `levels` must point to `len` readable doubles and `out` to a writable
 * pointer slot.
 */
enum EfStatus ef_hamiltonian_new(const double *levels, uintptr_t len, struct EfHamiltonian **out);

/**
 * Releases a Hamiltonian handle.
 *
 * # Safety
 * `handle` must come from `ef_hamiltonian_new` and not be freed twice.
 */
void ef_hamiltonian_free(struct EfHamiltonian *handle);

/**
 * Creates the `sites`-fold product of a single-system spectrum.
 *
 * # Safety
 * `spectrum` must point to `len` readable doubles and `out` to a writable
 * pointer slot.
 */
enum EfStatus ef_state_product(const double *spectrum,
                               uintptr_t len,
                               uintptr_t sites,
                               struct EfState **out);

/**
 * Creates a state from explicit populations over `levels^sites` labels,
 * flat little-endian order (site 0 least significant).
 *
 * # Safety
 * `populations` must point to `len` readable doubles and `out` to a
 * writable pointer slot.
 */
enum EfStatus ef_state_explicit(uintptr_t sites,
                                uintptr_t levels,
                                const double *populations,
                                uintptr_t len,
                                struct EfState **out);

/**
 * Releases a state handle.
 *
 * # Safety
 * `handle` must come from a state constructor and not be freed twice.
 */
void ef_state_free(struct EfState *handle);

/**
 * Maximal extractable work of `state` under `hamiltonian`; also reports
 * the initial and final (passive) energies.
 *
 * # Safety
 * All pointers must be valid; the out-pointers must be writable.
 */
enum EfStatus ef_maxwork(const struct EfState *state,
                         const struct EfHamiltonian *hamiltonian,
                         double *out_work,
                         double *out_initial,
                         double *out_final);

/**
 * Writes 1 to `out_passive` when no unitary can extract work from
 * `state`, 0 otherwise.
 *
 * # Safety
 * All pointers must be valid; `out_passive` must be writable.
 */
enum EfStatus ef_is_passive(const struct EfState *state,
                            const struct EfHamiltonian *hamiltonian,
                            int32_t *out_passive);

/**
 * Peak entanglement bounds for a transposition whose pair differs at
 * `differing` sites of a product pre-state: writes up to `capacity`
 * entries of `Lambda_k = |pa - pb| - 2k sqrt(pa pb)` into `out_entries`
 * and the full entry count into `out_len`.
 *
 * # Safety
 * `out_entries` must point to `capacity` writable doubles; `out_len`
 * must be writable.
 */
enum EfStatus ef_lambda_peak_equal_terms(double pop_alpha,
                                         double pop_beta,
                                         uintptr_t differing,
                                         double *out_entries,
                                         uintptr_t capacity,
                                         uintptr_t *out_len);

/**
 * Population ratio at which the k-th bound changes sign under equal
 * penalty terms: `1 + 2k^2 + 2k sqrt(1 + k^2)`.
 */
double ef_threshold_ratio_exact(double k);

/**
 * The companion threshold formula `1 + 2g + 2 sqrt(g + g^2)`; agrees
 * with the exact one at `g = 1` only.
 */
double ef_threshold_ratio_paper(double gamma);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ERGOFLOW_H */
