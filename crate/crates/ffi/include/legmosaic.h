#ifndef LEGMOSAIC_H
#define LEGMOSAIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LmStatus {
  LM_STATUS_OK = 0,
  LM_STATUS_NULL_POINTER = 1,
  LM_STATUS_INVALID_UTF8 = 2,
  LM_STATUS_INVALID_ENCODING = 3,
  LM_STATUS_NOT_SUITABLY_CONNECTED = 4,
  LM_STATUS_NOT_A_KNOT = 5,
  LM_STATUS_NOT_AN_UNKNOT_PAIR = 6,
  LM_STATUS_DOMAIN = 7,
  LM_STATUS_RESOURCE_LIMIT = 8,
  LM_STATUS_COMPLEXITY_LIMIT = 9,
  LM_STATUS_CONSTRUCTION_FAILED = 10,
  LM_STATUS_IO = 11,
  LM_STATUS_BUFFER_TOO_SMALL = 12,
  LM_STATUS_PANIC = 13,
} LmStatus;

typedef enum LmStyle {
  LM_STYLE_ASCII = 0,
  LM_STYLE_SVG = 1,
} LmStyle;

/**
 * Opaque mosaic handle.
 */
typedef struct LmMosaic LmMosaic;

typedef struct LmInvariants {
  int64_t tb;
  int64_t rot;
  int64_t writhe;
  uint64_t positive;
  uint64_t negative;
  uint64_t cusps;
  uint64_t up;
  uint64_t down;
  size_t components;
} LmInvariants;

/**
 * Lower bounds on the mosaic number; -1 marks a bound that does not apply.
 */
typedef struct LmBounds {
  int64_t rot_bound;
  int64_t tb_bound;
  int64_t tb_weak_bound;
  int64_t best_lower;
  /**
   * Unknot upper bound, or -1 when (tb, rot) is not an unknot pair.
   */
  int64_t upper_unknot;
} LmBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Short stable name of a status code, e.g. "not_suitably_connected".
 */
const char *lm_status_name(enum LmStatus status);

/**
 * Message of the last failed call on this thread; empty after a success.
 *
 * # Safety
 * `buf` must be valid for `cap` bytes and `needed` null or writable.
 */
enum LmStatus lm_last_error_message(char *buf, size_t cap, size_t *needed);

/**
 * Parses `<rows>x<cols>:<digits>` or bare square digits.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum LmStatus lm_mosaic_parse(const char *text, struct LmMosaic **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `m` must come from this library and not be used afterwards.
 */
void lm_mosaic_free(struct LmMosaic *m);

/**
 * # Safety
 * `m` must be a live handle and the out-pointers writable.
 */
enum LmStatus lm_mosaic_dims(const struct LmMosaic *m, size_t *rows, size_t *cols);

/**
 * Canonical `<rows>x<cols>:<digits>` text.
 *
 * # Safety
 * `m` must be a live handle, `buf` valid for `cap` bytes.
 */
enum LmStatus lm_mosaic_encode(const struct LmMosaic *m, char *buf, size_t cap, size_t *needed);

/**
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum LmStatus lm_mosaic_is_suitably_connected(const struct LmMosaic *m, bool *out);

/**
 * Invariants in the default orientation.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum LmStatus lm_mosaic_invariants(const struct LmMosaic *m, struct LmInvariants *out);

/**
 * Name of the smooth knot type ("unknot", "3_1", "UNKNOWN", ...). A
 * `max_crossings` of 0 uses the library default.
 *
 * # Safety
 * `m` must be a live handle, `buf` valid for `cap` bytes.
 */
enum LmStatus lm_mosaic_knot_type(const struct LmMosaic *m,
                                  size_t max_crossings,
                                  char *buf,
                                  size_t cap,
                                  size_t *needed);

/**
 * # Safety
 * `m` must be a live handle, `buf` valid for `cap` bytes.
 */
enum LmStatus lm_mosaic_render(const struct LmMosaic *m,
                               enum LmStyle style,
                               char *buf,
                               size_t cap,
                               size_t *needed);

/**
 * # Safety
 * `out` must be writable.
 */
enum LmStatus lm_bounds(int64_t tb, int64_t rot, struct LmBounds *out);

/**
 * Crab bucket of size `n` (n ≥ 5).
 *
 * # Safety
 * `out` must be writable.
 */
enum LmStatus lm_construct_crab(size_t n, struct LmMosaic **out);

/**
 * Unknot mosaic realizing (tb, rot). `reversed`, if not null, is set when the
 * requested rot holds for the reverse of the default orientation.
 *
 * # Safety
 * `out` must be writable; `reversed` null or writable.
 */
enum LmStatus lm_construct_unknot(int64_t tb, int64_t rot, struct LmMosaic **out, bool *reversed);

/**
 * Number of suitably connected m×n mosaics as a decimal string.
 *
 * # Safety
 * `buf` must be valid for `cap` bytes.
 */
enum LmStatus lm_count(size_t m, size_t n, bool classical, char *buf, size_t cap, size_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEGMOSAIC_H */
