/* C interface to the qudit-epi toolkit. */

#ifndef QUDIT_EPI_H
#define QUDIT_EPI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Largest dimension accepted across the ABI; the toolkit targets desk
 * scale and this guards against garbage sizes.
 */
#define QEP_MAX_DIM 4096

/**
 * Bound families for `qep_output_entropy_bound`.
 */
typedef enum QepBoundKind {
  Linear = 0,
  EntropyPower = 1,
  PhotonNumber = 2,
  QubitOptimal = 3,
} QepBoundKind;

/**
 * Status codes returned by every fallible call.
 */
typedef enum QepStatus {
  Ok = 0,
  NullPointer = 1,
  InvalidArgument = 2,
  NotHermitian = 3,
  NotPositiveSemidefinite = 4,
  TraceNotOne = 5,
  DimensionMismatch = 6,
  EigenFailure = 7,
  BufferTooSmall = 8,
} QepStatus;

/**
 * Opaque density-matrix handle.
 */
typedef struct QepState QepState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build a state from interleaved row-major re,im entries (length 2*dim*dim).
 * Validates Hermiticity, positivity, and unit trace.
 *
 * # Safety
 * `entries` must point to `2*dim*dim` readable doubles and `out` to a
 * writable pointer slot.
 */
enum QepStatus qep_state_new(uintptr_t dim, const double *entries, struct QepState **out);

/**
 * Ginibre-induced random state; deterministic in (dim, rank, seed).
 *
 * # Safety
 * `out` must point to a writable pointer slot.
 */
enum QepStatus qep_state_random(uintptr_t dim,
                                uintptr_t rank,
                                uint64_t seed,
                                struct QepState **out);

/**
 * The maximally mixed state I/dim.
 *
 * # Safety
 * `out` must point to a writable pointer slot.
 */
enum QepStatus qep_state_maximally_mixed(uintptr_t dim, struct QepState **out);

/**
 * Release a state handle. Null is a no-op.
 *
 * # Safety
 * `state` must be null or a pointer previously returned by this library,
 * not yet freed.
 */
void qep_state_free(struct QepState *state);

/**
 * Dimension of a state; 0 for null.
 *
 * # Safety
 * `state` must be null or a live handle from this library.
 */
uintptr_t qep_state_dim(const struct QepState *state);

/**
 * Copy interleaved row-major re,im entries into `buffer`.
 *
 * # Safety
 * `buffer` must hold at least `buffer_len` writable doubles.
 */
enum QepStatus qep_state_entries(const struct QepState *state,
                                 double *buffer,
                                 uintptr_t buffer_len);

/**
 * Copy the non-increasing eigenvalue vector into `buffer` (length >= dim).
 *
 * # Safety
 * `buffer` must hold at least `buffer_len` writable doubles.
 */
enum QepStatus qep_state_spectrum(const struct QepState *state,
                                  double *buffer,
                                  uintptr_t buffer_len);

/**
 * The partial swap addition rule rho (+)_a sigma.
 *
 * # Safety
 * `rho` and `sigma` must be live handles; `out` a writable pointer slot.
 */
enum QepStatus qep_boxplus(const struct QepState *rho,
                           const struct QepState *sigma,
                           double a,
                           struct QepState **out);

/**
 * The trivial mixing rule a rho + (1-a) sigma.
 *
 * # Safety
 * As for [`qep_boxplus`].
 */
enum QepStatus qep_mixing(const struct QepState *rho,
                          const struct QepState *sigma,
                          double a,
                          struct QepState **out);

/**
 * Von Neumann entropy in nats.
 *
 * # Safety
 * `state` must be a live handle; `out` a writable double.
 */
enum QepStatus qep_von_neumann(const struct QepState *state, double *out);

/**
 * Renyi entropy of order alpha in [0, 1).
 *
 * # Safety
 * As for [`qep_von_neumann`].
 */
enum QepStatus qep_renyi(const struct QepState *state, double alpha, double *out);

/**
 * Subentropy.
 *
 * # Safety
 * As for [`qep_von_neumann`].
 */
enum QepStatus qep_subentropy(const struct QepState *state, double *out);

/**
 * Entropy power exp(c H); c must be nonnegative.
 *
 * # Safety
 * As for [`qep_von_neumann`].
 */
enum QepStatus qep_entropy_power(const struct QepState *state, double c, double *out);

/**
 * Entropy photon number g^{-1}(c H); c must be nonnegative.
 *
 * # Safety
 * As for [`qep_von_neumann`].
 */
enum QepStatus qep_photon_number(const struct QepState *state, double c, double *out);

/**
 * Check lambda(rho (+)_a sigma) ≺ a lambda(rho) + (1-a) lambda(sigma).
 * Writes 1/0 into `out_holds` and the most negative prefix margin into
 * `out_worst_slack`.
 *
 * # Safety
 * Handles must be live; both out-pointers writable.
 */
enum QepStatus qep_spectral_majorization(const struct QepState *rho,
                                         const struct QepState *sigma,
                                         double a,
                                         double tolerance,
                                         int32_t *out_holds,
                                         double *out_worst_slack);

/**
 * Entropy-power concavity threshold c_max(dim) with its maximizer and the
 * closed-form lower bound.
 *
 * # Safety
 * All out-pointers must be writable doubles.
 */
enum QepStatus qep_cmax(uintptr_t dim,
                        double *out_c_max,
                        double *out_x_star,
                        double *out_lower_bound);

/**
 * Output-entropy lower bound G(H(rho)) for the fixed-sigma channel family,
 * from input entropies in nats.
 *
 * # Safety
 * `out` must be a writable double.
 */
enum QepStatus qep_output_entropy_bound(enum QepBoundKind kind,
                                        double h_rho,
                                        double h_sigma,
                                        double a,
                                        uintptr_t dim,
                                        double *out);

/**
 * Holevo-capacity upper bound log d - (1-a) H(sigma).
 *
 * # Safety
 * `sigma` must be a live handle; `out` a writable double.
 */
enum QepStatus qep_holevo_upper_bound(const struct QepState *sigma, double a, double *out);

/**
 * Library version as a static C string.
 */
const char *qep_version(void);

/**
 * Static description of a status code.
 */
const char *qep_status_message(enum QepStatus status);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QUDIT_EPI_H */
