/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef BCHP_H
#define BCHP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum {
  HB_STATUS_OK = 0,
  HB_STATUS_NULL_POINTER = 1,
  HB_STATUS_INVALID_ARGUMENT = 2,
  HB_STATUS_PARSE = 3,
  HB_STATUS_DOMAIN = 4,
  /**
   * A verification ran and at least one check failed.
   */
  HB_STATUS_VERIFY_FAILED = 5,
  HB_STATUS_PANIC = 99,
} HbStatus;

/**
 * Construction route for [`hb_poly_new_bchp`].
 */
typedef enum {
  HB_ROUTE_COMPOSE = 0,
  HB_ROUTE_RODRIGUES = 1,
  HB_ROUTE_OPERATIONAL = 2,
  HB_ROUTE_BINOMIAL = 3,
} HbRoute;

/**
 * Opaque exact polynomial in `(z, z̄, w, w̄)`.
 */
typedef struct HbPoly HbPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread; do not free.
 */
const char *hb_last_error(void);

/**
 * Library version as a static string.
 */
const char *hb_version(void);

/**
 * Builds `H_{m,n,m',n'}` exactly.
 *
 * # Safety
 * `out` must be valid for writes.
 */
HbStatus hb_poly_new_bchp(uint32_t m,
                          uint32_t n,
                          uint32_t mp,
                          uint32_t np,
                          HbRoute route,
                          HbPoly **out);

/**
 * Parses a polynomial from its JSON form.
 *
 * # Safety
 * `json` is a nul-terminated string; `out` must be valid for writes.
 */
HbStatus hb_poly_from_json(const char *json, HbPoly **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `p` is null or a live handle; it must not be used afterwards.
 */
void hb_poly_free(HbPoly *p);

/**
 * Number of nonzero terms.
 *
 * # Safety
 * `p` is a live handle; `out` must be valid for writes.
 */
HbStatus hb_poly_num_terms(const HbPoly *p, size_t *out);

/**
 * Total degree; zero for the zero polynomial.
 *
 * # Safety
 * `p` is a live handle; `out` must be valid for writes.
 */
HbStatus hb_poly_degree(const HbPoly *p, uint32_t *out);

/**
 * Evaluates at `(z, w)` in double precision.
 *
 * # Safety
 * `p` is a live handle; `out_re` and `out_im` must be valid for writes.
 */
HbStatus hb_poly_eval(const HbPoly *p,
                      double z_re,
                      double z_im,
                      double w_re,
                      double w_im,
                      double *out_re,
                      double *out_im);

/**
 * Serializes to JSON; free the result with [`hb_string_free`].
 *
 * # Safety
 * `p` is a live handle; `out` must be valid for writes.
 */
HbStatus hb_poly_to_json(const HbPoly *p, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or a string from this library that has not been freed.
 */
void hb_string_free(char *s);

/**
 * `H_{m,n}(z, z̄)`.
 *
 * # Safety
 * `out_re` and `out_im` must be valid for writes.
 */
HbStatus hb_uchp_eval(uint32_t m,
                      uint32_t n,
                      double z_re,
                      double z_im,
                      double *out_re,
                      double *out_im);

/**
 * `∫ H_M conj(H_N) e^{−2(|z|²+|w|²)}` with `nodes` Gauss–Hermite nodes.
 *
 * # Safety
 * `m` and `n` point to four `u32` each; `out_re` and `out_im` must be valid
 * for writes.
 */
HbStatus hb_ortho_integral(const uint32_t *m,
                           const uint32_t *n,
                           size_t nodes,
                           double *out_re,
                           double *out_im);

/**
 * Runs a verification suite with default settings and returns its JSON
 * report lines in `out_json` (may be null to discard). Returns
 * [`HbStatus::VerifyFailed`] if any check failed.
 *
 * # Safety
 * `suite` is a nul-terminated string; `out_json` is null or valid for writes.
 */
HbStatus hb_verify(const char *suite, bool as_printed_only, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BCHP_H */
