#ifndef CELLULAR_H
#define CELLULAR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CellularStatus {
  CELLULAR_STATUS_OK = 0,
  CELLULAR_STATUS_NULL_POINTER = 1,
  CELLULAR_STATUS_INVALID_SCHEME = 2,
  CELLULAR_STATUS_NOT_PRIME = 3,
  CELLULAR_STATUS_NUMERIC = 4,
  CELLULAR_STATUS_INVALID_ARGUMENT = 5,
  CELLULAR_STATUS_INTERNAL = 6,
} CellularStatus;

/**
 * Opaque handle to a validated coherent configuration.
 */
typedef struct CellularScheme CellularScheme;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a scheme from a row-major `n × n` color matrix.
 *
 * # Safety
 * `colors` must point to `n * n` readable values and `out` must be writable.
 */
enum CellularStatus cellular_scheme_from_matrix(size_t n,
                                                const size_t *colors,
                                                struct CellularScheme **out);

/**
 * Builds a scheme from an id such as `rank2(3)` or `thin-group(Q8)`.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` must be writable.
 */
enum CellularStatus cellular_scheme_generate(const char *spec, struct CellularScheme **out);

/**
 * # Safety
 * `scheme` must be null or a handle from this library not yet freed.
 */
void cellular_scheme_free(struct CellularScheme *scheme);

/**
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum CellularStatus cellular_scheme_size(const struct CellularScheme *scheme, size_t *out);

/**
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum CellularStatus cellular_scheme_rank(const struct CellularScheme *scheme, size_t *out);

/**
 * Frame number as a decimal string; free it with [`cellular_string_free`].
 *
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum CellularStatus cellular_frame_number(const struct CellularScheme *scheme,
                                          uint64_t seed,
                                          char **out);

/**
 * Dimension of the radical of the adjacency algebra over `F_p`.
 *
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum CellularStatus cellular_radical_dim(const struct CellularScheme *scheme,
                                         uint64_t p,
                                         size_t *out);

/**
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum CellularStatus cellular_is_semisimple(const struct CellularScheme *scheme,
                                           uint64_t p,
                                           bool *out);

/**
 * Full verification report as one JSON line. `id` may be null.
 *
 * # Safety
 * `scheme` must be a live handle, `id` null or nul-terminated, `out` writable.
 */
enum CellularStatus cellular_verify_json(const struct CellularScheme *scheme,
                                         const char *id,
                                         uint64_t seed,
                                         char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void cellular_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *cellular_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CELLULAR_H */
