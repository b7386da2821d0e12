#ifndef KHOPF_H
#define KHOPF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum KhopfStatus {
  KHOPF_STATUS_OK = 0,
  KHOPF_STATUS_NULL_POINTER = 1,
  KHOPF_STATUS_INVALID_UTF8 = 2,
  KHOPF_STATUS_PARSE = 3,
  KHOPF_STATUS_INVALID_INDEX = 4,
  KHOPF_STATUS_INVALID_CONTEXT = 5,
  KHOPF_STATUS_INADEQUATE = 6,
  KHOPF_STATUS_EXPANSION_FAILED = 7,
  KHOPF_STATUS_IDENTITY_VIOLATION = 8,
  KHOPF_STATUS_OTHER = 9,
  KHOPF_STATUS_PANIC = 10,
} KhopfStatus;

// Output format for string conversions.
typedef enum KhopfFormat {
  KHOPF_FORMAT_TEXT = 0,
  KHOPF_FORMAT_JSON = 1,
} KhopfFormat;

// A combination of multipeak basis elements.
typedef struct KhopfPeak KhopfPeak;

// A truncated polynomial in `x_1..x_N` and `beta`.
typedef struct KhopfPoly KhopfPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread; empty after a success.
// The pointer stays valid until the next call on this thread.
const char *khopf_last_error(void);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void khopf_string_free(char *s);

// The library version.
const char *khopf_version(void);

// A basis element `family[index]` (optionally skew `family[index]/[skew]`)
// as a polynomial in `n` variables truncated at degree `d`.
//
// `family` names a symmetric or quasisymmetric family; `index` is written
// `3,1`, and `""` is the empty index. `skew` may be null.
//
// # Safety
// String arguments must be null or NUL-terminated; `out` must be writable.
enum KhopfStatus khopf_poly_basis(const char *family,
                                  const char *idx,
                                  const char *skew,
                                  size_t n,
                                  size_t d,
                                  struct KhopfPoly **out);

// `a * b`. Both operands must share a truncation context.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum KhopfStatus khopf_poly_mul(const struct KhopfPoly *a,
                                const struct KhopfPoly *b,
                                struct KhopfPoly **out);

// `a + b`. Both operands must share a truncation context.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum KhopfStatus khopf_poly_add(const struct KhopfPoly *a,
                                const struct KhopfPoly *b,
                                struct KhopfPoly **out);

// Whether `p` is zero, written to `out`.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum KhopfStatus khopf_poly_is_zero(const struct KhopfPoly *p, bool *out);

// Render `p` as text or JSON.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum KhopfStatus khopf_poly_to_string(const struct KhopfPoly *p,
                                      enum KhopfFormat format,
                                      char **out);

// Expand `p` in a symmetric or quasisymmetric family, e.g. `"GP"` or `"K"`.
//
// # Safety
// `p` must be a live handle; `family` NUL-terminated; `out` writable.
enum KhopfStatus khopf_poly_expand(const struct KhopfPoly *p,
                                   const char *family,
                                   enum KhopfFormat format,
                                   char **out);

// Release a polynomial. Null is ignored.
//
// # Safety
// `p` must come from this library and not have been freed.
void khopf_poly_free(struct KhopfPoly *p);

// The multipeak basis element `basis[index]`, `basis` being `"tpeak"` or `"opeak"`.
//
// # Safety
// String arguments must be NUL-terminated; `out` must be writable.
enum KhopfStatus khopf_peak_basis(const char *basis, const char *idx, struct KhopfPeak **out);

// `a * b`, computed in the basis of `a`.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum KhopfStatus khopf_peak_mul(const struct KhopfPeak *a,
                                const struct KhopfPeak *b,
                                struct KhopfPeak **out);

// `x` rewritten in `basis`.
//
// # Safety
// `x` must be a live handle; `basis` NUL-terminated; `out` writable.
enum KhopfStatus khopf_peak_convert(const struct KhopfPeak *x,
                                    const char *basis,
                                    struct KhopfPeak **out);

// The antipode of `x`, in the `tpeak` basis.
//
// # Safety
// `x` must be a live handle; `out` must be writable.
enum KhopfStatus khopf_peak_antipode(const struct KhopfPeak *x, struct KhopfPeak **out);

// The coproduct of `x` in `tpeak ⊗ tpeak`, as text.
//
// # Safety
// `x` must be a live handle; `out` must be writable.
enum KhopfStatus khopf_peak_coproduct(const struct KhopfPeak *x, char **out);

// Render `x` as text, e.g. `2b*P[2,1] + 4*P[3,1]`.
//
// # Safety
// `x` must be a live handle; `out` must be writable.
enum KhopfStatus khopf_peak_to_string(const struct KhopfPeak *x, char **out);

// Release a multipeak element. Null is ignored.
//
// # Safety
// `x` must come from this library and not have been freed.
void khopf_peak_free(struct KhopfPeak *x);

// Run a named identity suite (`"duality"`, `"peak-products"`, ...) at
// `bound` with `N = D = bound`. Writes the JSON reports to `out` and
// returns `IdentityViolation` when any instance fails.
//
// # Safety
// `suite` must be NUL-terminated; `out` must be writable.
enum KhopfStatus khopf_verify(const char *suite, uint32_t bound, uint64_t seed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KHOPF_H */
