#ifndef SESHADRI_H
#define SESHADRI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum SeshadriStatus {
  SESHADRI_STATUS_OK = 0,
  // A required pointer argument was null.
  SESHADRI_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  SESHADRI_STATUS_INVALID_UTF8 = 2,
  // A number or JSON document could not be parsed.
  SESHADRI_STATUS_PARSE = 3,
  // Inputs outside the supported domain, including exceeded scan caps.
  SESHADRI_STATUS_DOMAIN = 4,
  // A certificate or document failed verification.
  SESHADRI_STATUS_VERIFICATION_FAILED = 5,
  SESHADRI_STATUS_PANIC = 6,
} SeshadriStatus;

// Opaque handle to an exact radical `radicand^(1/index)`.
typedef struct SeshadriRadical SeshadriRadical;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Error message from the most recent call on this thread, or `""` if it
// succeeded.
//
// The pointer stays valid until the next call into this library on the
// same thread. Do not free it.
const char *seshadri_last_error_message(void);

// Releases a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must be null or a string obtained from this library, not yet freed.
void seshadri_string_free(char *s);

// Builds the canonical radical `radicand^(1/index)`. `radicand` is a
// decimal rational such as `"6/7"` or `"12"`.
//
// # Safety
// `radicand` must be a valid nul-terminated string and `out` valid for
// writes.
enum SeshadriStatus seshadri_radical_new(const char *radicand,
                                         uint32_t index,
                                         struct SeshadriRadical **out);

// Releases a radical. Null is a no-op.
//
// # Safety
// `r` must be null or a handle from this library, not yet freed.
void seshadri_radical_free(struct SeshadriRadical *r);

// Index of the canonical form, or 0 if `r` is null.
//
// # Safety
// `r` must be null or a live handle.
uint32_t seshadri_radical_index(const struct SeshadriRadical *r);

// Writes -1, 0 or 1 as `a` is less than, equal to or greater than `b`.
//
// # Safety
// `a` and `b` must be live handles and `out` valid for writes.
enum SeshadriStatus seshadri_radical_cmp(const struct SeshadriRadical *a,
                                         const struct SeshadriRadical *b,
                                         int32_t *out);

// `r^k` as a new handle.
//
// # Safety
// `r` must be a live handle and `out` valid for writes.
enum SeshadriStatus seshadri_radical_pow(const struct SeshadriRadical *r,
                                         uint32_t k,
                                         struct SeshadriRadical **out);

// Exact text form, e.g. `"sqrt(6/7)"`. Free with [`seshadri_string_free`].
//
// # Safety
// `r` must be a live handle and `out` valid for writes.
enum SeshadriStatus seshadri_radical_to_string(const struct SeshadriRadical *r, char **out);

// Floating-point approximation, for display only.
//
// # Safety
// `r` must be a live handle and `out` valid for writes.
enum SeshadriStatus seshadri_radical_approx(const struct SeshadriRadical *r, double *out);

// `floor(sqrt(n))` for a nonnegative decimal integer of any size.
//
// # Safety
// `n` must be a valid nul-terminated string and `out` valid for writes.
enum SeshadriStatus seshadri_isqrt(const char *n, char **out);

// Certificate document for a Picard-rank-one surface with `L^2 = l2`.
// `alpha = 0` selects the default `floor(sqrt(l2))`.
//
// # Safety
// `out` must be valid for writes.
enum SeshadriStatus seshadri_surface_json(uint64_t l2, uint64_t alpha, char **out);

// Abelian bound document. `kind` is `"hyperelliptic"`, `"general"` or
// `"ppas-exact"`.
//
// # Safety
// `kind` must be a valid nul-terminated string and `out` valid for writes.
enum SeshadriStatus seshadri_abelian_json(uint32_t g, const char *kind, char **out);

// Floor-bound scan document for `nu` in `[from, to]`.
//
// # Safety
// `out` must be valid for writes.
enum SeshadriStatus seshadri_scan_floor_json(uint64_t from, uint64_t to, uint64_t cap, char **out);

// Violation scan document over `1..=dmax` by `1..=mmax`.
//
// # Safety
// `out` must be valid for writes.
enum SeshadriStatus seshadri_scan_violation_json(uint64_t l2,
                                                 uint64_t alpha,
                                                 uint64_t dmax,
                                                 uint64_t mmax,
                                                 uint64_t cap,
                                                 char **out);

// The full table of headline values.
//
// # Safety
// `out` must be valid for writes.
enum SeshadriStatus seshadri_reproduce_json(char **out);

// Re-verifies a certificate document produced by any `*_json` function or
// the command-line tool.
//
// # Safety
// `document` must be a valid nul-terminated string.
enum SeshadriStatus seshadri_verify_json(const char *document);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SESHADRI_H */
