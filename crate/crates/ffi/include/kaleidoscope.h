#ifndef KALEIDOSCOPE_H
#define KALEIDOSCOPE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KsList {
  KS_LIST_OBSERVABLES = 0,
  KS_LIST_TRIADS = 1,
  KS_LIST_STATES = 2,
  KS_LIST_SQUARES = 3,
  KS_LIST_TETRADS = 4,
  KS_LIST_LINES = 5,
  KS_LIST_MUB_SETS = 6,
} KsList;

typedef enum KsScope {
  KS_SCOPE_ALL = 0,
  KS_SCOPE_OBSERVABLES = 1,
  KS_SCOPE_SQUARES = 2,
  KS_SCOPE_STATES = 3,
  KS_SCOPE_REYE = 4,
  KS_SCOPE_APPARITIONS = 5,
  KS_SCOPE_DESIGNS = 6,
  KS_SCOPE_TRANSFORMS = 7,
} KsScope;

typedef enum KsStatus {
  KS_STATUS_OK = 0,
  KS_STATUS_NULL_POINTER = 1,
  KS_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The embedded tables could not be reproduced.
   */
  KS_STATUS_BUILD_FAILED = 3,
  KS_STATUS_INTERNAL = 4,
} KsStatus;

/**
 * Opaque handle owning every derived object.
 */
typedef struct KsKaleidoscope KsKaleidoscope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a handle from the embedded tables.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum KsStatus ks_new(struct KsKaleidoscope **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `k` must be null or a handle from [`ks_new`] not already freed.
 */
void ks_free(struct KsKaleidoscope *k);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not already freed.
 */
void ks_string_free(char *s);

/**
 * Message for the last failed call on this thread, or an empty string.
 * Valid until the next call into the library on this thread.
 */
const char *ks_last_error(void);

/**
 * Number of states in the catalog (60).
 *
 * # Safety
 * `k` must be a live handle and `out` valid for writes.
 */
enum KsStatus ks_state_count(const struct KsKaleidoscope *k, size_t *out);

/**
 * Canonical coordinates of state `label` as real and imaginary parts.
 *
 * # Safety
 * `k` must be a live handle; `re` and `im` must each point to 4 writable
 * `int64_t`.
 */
enum KsStatus ks_state_coords(const struct KsKaleidoscope *k,
                              uint8_t label,
                              int64_t *re,
                              int64_t *im);

/**
 * Records of one kind as a JSON array. `square` is 1..=10 to restrict
 * tetrads or lines, or 0 for none.
 *
 * # Safety
 * `k` must be a live handle and `out` valid for writes.
 */
enum KsStatus ks_list_json(const struct KsKaleidoscope *k,
                           enum KsList kind,
                           uint8_t square,
                           char **out);

/**
 * Apparitions as a JSON array. `square` is 1..=10 or 0 for all; `kind`
 * is 18, 20 or 0 for both. With `check`, each record carries its parity
 * result and coloring count.
 *
 * # Safety
 * `k` must be a live handle and `out` valid for writes.
 */
enum KsStatus ks_apparitions_json(const struct KsKaleidoscope *k,
                                  uint8_t square,
                                  uint8_t kind,
                                  bool check,
                                  char **out);

/**
 * Symplectic maps carrying square `from` onto `to` as a JSON array,
 * optionally with exact unitary lifts.
 *
 * # Safety
 * `k` must be a live handle and `out` valid for writes.
 */
enum KsStatus ks_find_maps_json(const struct KsKaleidoscope *k,
                                uint8_t from,
                                uint8_t to,
                                bool lift,
                                char **out);

/**
 * Counts colorings of `states` in which every tetrad has exactly one
 * green member.
 *
 * # Safety
 * `states` must point to `n_states` labels and `tetrads` to
 * `4 * n_tetrads` labels; `out` must be valid for writes.
 */
enum KsStatus ks_color_search(const uint8_t *states,
                              size_t n_states,
                              const uint8_t *tetrads,
                              size_t n_tetrads,
                              uint64_t *out);

/**
 * Runs a verification suite on the embedded tables. `passed` receives
 * the overall result and `report` (if not null) the JSON report.
 *
 * # Safety
 * `passed` must be valid for writes; `report` null or valid for writes.
 */
enum KsStatus ks_verify(enum KsScope scope, bool *passed, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KALEIDOSCOPE_H */
