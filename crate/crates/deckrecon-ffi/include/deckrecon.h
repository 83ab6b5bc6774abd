/* C interface to the deckrecon hypercube deck-reconstruction toolkit. */

#ifndef DECKRECON_H
#define DECKRECON_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every fallible call.
 */
typedef enum DrStatus {
  DR_STATUS_OK = 0,
  DR_STATUS_NULL_ARGUMENT = 1,
  DR_STATUS_INVALID_ARGUMENT = 2,
  DR_STATUS_DIMENSION_MISMATCH = 3,
  DR_STATUS_INSTANCE_TOO_LARGE = 4,
  DR_STATUS_PRECONDITION_VIOLATED = 5,
  DR_STATUS_INVARIANT_VIOLATION = 6,
  DR_STATUS_VERIFICATION_FAILURE = 7,
  DR_STATUS_TRANSLATES_INPUT = 8,
  DR_STATUS_OVERFLOW = 9,
  DR_STATUS_BUFFER_TOO_SMALL = 10,
} DrStatus;

/**
 * Opaque multiset over Z_2^n.
 */
typedef struct DrMultiset DrMultiset;

/**
 * Opaque subset of Z_2^n.
 */
typedef struct DrSubset DrSubset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static name of a status code, e.g. for error messages.
 */
const char *dr_status_name(enum DrStatus status);

/**
 * Creates a multiset from a count vector of length `2^dim`.
 *
 * # Safety
 * `counts` must point to `len` readable u64 values and `out` must be a valid
 * writable handle slot.
 */
enum DrStatus dr_multiset_new(uint32_t dim,
                              const uint64_t *counts,
                              size_t len,
                              struct DrMultiset **out);

/**
 * # Safety
 * `m` must be a handle from this library, not yet freed; null is a no-op.
 */
void dr_multiset_free(struct DrMultiset *m);

/**
 * Dimension of the multiset, or 0 for a null handle.
 *
 * # Safety
 * `m` must be a live handle from this library or null.
 */
uint32_t dr_multiset_dim(const struct DrMultiset *m);

/**
 * Copies the count vector into `out` (capacity `cap`); writes the required
 * length to `len`.
 *
 * # Safety
 * `m` must be a live handle; `out` must hold `cap` writable u64 slots; `len`
 * must be writable.
 */
enum DrStatus dr_multiset_counts(const struct DrMultiset *m,
                                 uint64_t *out,
                                 size_t cap,
                                 size_t *len);

/**
 * Walsh-Hadamard spectrum of the multiset, written as i64 values of length
 * `2^dim`. Values outside the i64 range report `OVERFLOW`.
 *
 * # Safety
 * `m` must be a live handle; `out` must hold `cap` writable i64 slots; `len`
 * must be writable.
 */
enum DrStatus dr_multiset_wht(const struct DrMultiset *m, int64_t *out, size_t cap, size_t *len);

/**
 * Least deck level separating the two multisets; writes -1 when they are
 * translates (distinguishing number infinity).
 *
 * # Safety
 * `a` and `b` must be live handles; `out_level` must be writable.
 */
enum DrStatus dr_distinguishing_number(const struct DrMultiset *a,
                                       const struct DrMultiset *b,
                                       int32_t *out_level);

/**
 * The lexicographically least zero-sum witness at the separating level.
 * Fails with `TRANSLATES_INPUT` when no witness exists.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must hold `cap` writable u32
 * slots; `len` must be writable.
 */
enum DrStatus dr_distinguishing_witness(const struct DrMultiset *a,
                                        const struct DrMultiset *b,
                                        uint32_t *out,
                                        size_t cap,
                                        size_t *len);

/**
 * Exact k-indistinguishability of two multisets.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum DrStatus dr_fourier_indistinguishable(const struct DrMultiset *a,
                                           const struct DrMultiset *b,
                                           uint32_t k,
                                           bool *out);

/**
 * The reconstruction number of Z_2^n and the threshold exponent t used by
 * its integer form.
 *
 * # Safety
 * `out_r` and `out_t` must be writable.
 */
enum DrStatus dr_reconstruction_formula(uint32_t n, uint32_t *out_r, uint32_t *out_t);

/**
 * Whether `2^(n+1-k) >= k`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DrStatus dr_predicate(uint32_t n, uint32_t k, bool *out);

/**
 * Builds the deterministic witness pair for (n, k) as two subset handles.
 *
 * # Safety
 * `out_a` and `out_b` must be valid writable handle slots.
 */
enum DrStatus dr_build_witness(uint32_t n,
                               uint32_t k,
                               struct DrSubset **out_a,
                               struct DrSubset **out_b);

/**
 * # Safety
 * `s` must be a handle from this library, not yet freed; null is a no-op.
 */
void dr_subset_free(struct DrSubset *s);

/**
 * Dimension of the subset, or 0 for a null handle.
 *
 * # Safety
 * `s` must be a live handle from this library or null.
 */
uint32_t dr_subset_dim(const struct DrSubset *s);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `s` must be a live handle from this library or null.
 */
size_t dr_subset_len(const struct DrSubset *s);

/**
 * Copies the sorted elements into `out` (capacity `cap`); writes the
 * required length to `len`.
 *
 * # Safety
 * `s` must be a live handle; `out` must hold `cap` writable u32 slots;
 * `len` must be writable.
 */
enum DrStatus dr_subset_elements(const struct DrSubset *s, uint32_t *out, size_t cap, size_t *len);

/**
 * Builds the standard family pair `(f_(a,b), f_(b,a))` on Z_2^(k-1) from
 * `k - 1` positive weights.
 *
 * # Safety
 * `coeffs` must point to `coeffs_len` readable u64 values; `out_f1` and
 * `out_f2` must be valid writable handle slots.
 */
enum DrStatus dr_standard_pair(uint32_t k,
                               uint64_t a,
                               uint64_t b,
                               const uint64_t *coeffs,
                               size_t coeffs_len,
                               struct DrMultiset **out_f1,
                               struct DrMultiset **out_f2);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DECKRECON_H */
