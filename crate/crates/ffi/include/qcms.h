#ifndef QCMS_H
#define QCMS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define QCMS_RING_CLASSICAL 0

#define QCMS_RING_FLOER 1

#define QCMS_RING_QUANTUM 2

typedef enum QcmsStatus {
  QCMS_STATUS_OK = 0,
  QCMS_STATUS_NULL_POINTER = 1,
  QCMS_STATUS_INVALID_ARGUMENT = 2,
  QCMS_STATUS_DEGREE_BALANCE = 3,
  QCMS_STATUS_GENUS_OUT_OF_RANGE = 4,
  QCMS_STATUS_VERIFICATION_FAILED = 5,
  QCMS_STATUS_BUFFER_TOO_SMALL = 6,
  QCMS_STATUS_INTERNAL = 7,
} QcmsStatus;

// A relation triple of the classical, Floer or quantum presentation.
typedef struct QcmsPresentation QcmsPresentation;

// Ideal computations shared across verification calls, optionally backed
// by an on-disk cache.
typedef struct QcmsStore QcmsStore;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next library call on the same thread.
const char *qcms_last_error_message(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void qcms_string_free(char *s);

// Builds the triple of index `r` for a ring (`QCMS_RING_*`); `genus` is
// used by the quantum ring only.
//
// # Safety
// `out` must be a valid pointer to write the handle to.
enum QcmsStatus qcms_presentation_new(uint32_t ring,
                                      uint32_t r,
                                      uint32_t genus,
                                      struct QcmsPresentation **out);

// # Safety
// `p` must come from `qcms_presentation_new` and not have been freed.
void qcms_presentation_free(struct QcmsPresentation *p);

// JSON form of a triple; release with `qcms_string_free`.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum QcmsStatus qcms_presentation_to_json(const struct QcmsPresentation *p, char **out);

// Text form such as "(α, β - 8, γ)"; release with `qcms_string_free`.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum QcmsStatus qcms_presentation_to_text(const struct QcmsPresentation *p, char **out);

// Gromov–Witten value by the closed formula, as "p/q".
//
// # Safety
// `psi` must hold `n_psi` integers (or be null when `n_psi` is 0); `out`
// must be a valid pointer.
enum QcmsStatus qcms_gw_formula(uint32_t genus,
                                uint32_t alpha,
                                uint32_t beta,
                                const uint32_t *psi,
                                size_t n_psi,
                                char **out);

// Gromov–Witten value by multiplication in QH*(N), as "p/q". Refused at
// genus 2 with β > 0.
//
// # Safety
// As for `qcms_gw_formula`.
enum QcmsStatus qcms_gw_ring(uint32_t genus,
                             uint32_t alpha,
                             uint32_t beta,
                             const uint32_t *psi,
                             size_t n_psi,
                             char **out);

// Creates an ideal store; `cache_dir` may be null to disable disk caching.
//
// # Safety
// `cache_dir` must be null or a NUL-terminated string; `out` a valid pointer.
enum QcmsStatus qcms_store_new(const char *cache_dir, struct QcmsStore **out);

// # Safety
// `s` must come from `qcms_store_new` and not have been freed.
void qcms_store_free(struct QcmsStore *s);

// Runs a verification suite and writes its JSON report to `out`. Returns
// `QCMS_STATUS_VERIFICATION_FAILED` (with the report still written) when
// any check fails.
//
// # Safety
// `store` must be a live handle, `suite` a NUL-terminated string and `out`
// a valid pointer.
enum QcmsStatus qcms_verify(const struct QcmsStore *store,
                            const char *suite,
                            uint32_t genus,
                            char **out);

// Writes the Poincaré series coefficients (index = degree) into `coeffs`.
// `len` receives the number of coefficients even when the buffer is too
// small, so a call with `capacity` 0 queries the size.
//
// # Safety
// `coeffs` must hold `capacity` writable integers (or be null when
// `capacity` is 0); `len` must be a valid pointer.
enum QcmsStatus qcms_poincare(uint32_t genus, uint64_t *coeffs, size_t capacity, size_t *len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCMS_H */
