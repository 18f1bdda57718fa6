#ifndef POLYCOND_H
#define POLYCOND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum PcStatus {
  PC_STATUS_OK = 0,
  PC_STATUS_NULL_POINTER = 1,
  PC_STATUS_INVALID_ARGUMENT = 2,
  PC_STATUS_DOMAIN = 3,
  PC_STATUS_SINGULAR = 4,
  PC_STATUS_DEGENERATE_WEIGHTS = 5,
  PC_STATUS_PRECISION = 6,
  PC_STATUS_UNSUPPORTED = 7,
  PC_STATUS_INTERNAL = 8,
} PcStatus;

/**
 * Opaque polynomial handle.
 */
typedef struct PcPolynomial PcPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *pc_last_error(void);

/**
 * Sets the default working precision in decimal digits.
 */
enum PcStatus pc_set_precision(uint32_t digits);

/**
 * Builds the monic polynomial with roots `num[k] / den[k]`, expanded
 * exactly in the monomial basis.
 *
 * # Safety
 * `num` and `den` must point to `n` readable values each; `out` must be
 * writable.
 */
enum PcStatus pc_polynomial_from_roots(const int64_t *num,
                                       const int64_t *den,
                                       size_t n,
                                       struct PcPolynomial **out);

/**
 * Builds a named polynomial: `wilkinson<N>`, `c<N>` or `s<N>`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum PcStatus pc_polynomial_named(const char *name, struct PcPolynomial **out);

/**
 * `prod_{k=1}^n (x - k)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PcStatus pc_polynomial_wilkinson(size_t n, struct PcPolynomial **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `p` must come from one of the constructors and not be freed twice.
 */
void pc_polynomial_free(struct PcPolynomial *p);

/**
 * Degree of the polynomial; 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t pc_polynomial_degree(const struct PcPolynomial *p);

/**
 * Root number `index` in ascending order, as a double.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum PcStatus pc_polynomial_root(const struct PcPolynomial *p, size_t index, double *out);

/**
 * `log10 B(x)` at `x = num / den`, computed exactly.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum PcStatus pc_condition_b_log10(const struct PcPolynomial *p,
                                   int64_t num,
                                   int64_t den,
                                   double *out);

/**
 * `log10 A(r)` for root number `index` (ascending order), or
 * `log10 B(r)/|p'(r)|` when `absolute` is nonzero.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum PcStatus pc_root_condition_log10(const struct PcPolynomial *p,
                                      size_t index,
                                      int32_t absolute,
                                      double *out);

/**
 * `log10 (|p(z)| / B(z))` with weights `|c_k|` at `z = re + i im`, using
 * `digits` decimal digits (0 for the default).
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum PcStatus pc_indicator_log10(const struct PcPolynomial *p,
                                 double re,
                                 double im,
                                 uint32_t digits,
                                 double *out);

/**
 * Static description of a status code.
 */
const char *pc_status_name(enum PcStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYCOND_H */
