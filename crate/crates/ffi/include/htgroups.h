#ifndef HTGROUPS_H
#define HTGROUPS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum HtStatus {
  HT_STATUS_OK = 0,
  HT_STATUS_NULL_POINTER = 1,
  HT_STATUS_INVALID_UTF8 = 2,
  HT_STATUS_PARSE = 3,
  /**
   * Arguments describe no valid object (bad arity, index out of range, ...).
   */
  HT_STATUS_INVALID = 4,
  /**
   * Operands belong to different groups.
   */
  HT_STATUS_MISMATCH = 5,
  /**
   * A word too short for every rule of the map.
   */
  HT_STATUS_INSUFFICIENT_DEPTH = 6,
  HT_STATUS_PANIC = 7,
} HtStatus;

/**
 * A group element in reduced form.
 */
typedef struct HtDiagram HtDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *ht_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ht_version(void);

/**
 * Parse `F-;[perm];F+`. `default_arity` applies only when neither forest has
 * an internal node. The result is reduced.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum HtStatus ht_diagram_parse(const char *text, size_t default_arity, struct HtDiagram **out);

/**
 * Seeded random reduced element of V(arity, roots) with `carets` carets per forest.
 *
 * # Safety
 * `out` must be writable.
 */
enum HtStatus ht_diagram_random(size_t arity,
                                size_t roots,
                                size_t carets,
                                uint64_t seed,
                                struct HtDiagram **out);

/**
 * The identity of V(arity, roots).
 *
 * # Safety
 * `out` must be writable.
 */
enum HtStatus ht_diagram_identity(size_t arity, size_t roots, struct HtDiagram **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `d` must come from this library and not be used afterwards.
 */
void ht_diagram_free(struct HtDiagram *d);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum HtStatus ht_diagram_to_string(const struct HtDiagram *d, char **out);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void ht_string_free(char *s);

/**
 * # Safety
 * `d` must be a live handle or null.
 */
size_t ht_diagram_arity(const struct HtDiagram *d);

/**
 * # Safety
 * `d` must be a live handle or null.
 */
size_t ht_diagram_roots(const struct HtDiagram *d);

/**
 * # Safety
 * `d` must be a live handle or null.
 */
size_t ht_diagram_leaf_count(const struct HtDiagram *d);

/**
 * `x * y`: `y` acts first.
 *
 * # Safety
 * `x`, `y` must be live handles; `out` must be writable.
 */
enum HtStatus ht_diagram_multiply(const struct HtDiagram *x,
                                  const struct HtDiagram *y,
                                  struct HtDiagram **out);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum HtStatus ht_diagram_invert(const struct HtDiagram *d, struct HtDiagram **out);

/**
 * A reduced copy. Handles are always reduced, so this is a copy.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum HtStatus ht_diagram_reduce(const struct HtDiagram *d, struct HtDiagram **out);

/**
 * # Safety
 * `x`, `y` must be live handles; `out` must be writable.
 */
enum HtStatus ht_diagram_equal(const struct HtDiagram *x, const struct HtDiagram *y, bool *out);

/**
 * Image of the finite word `word` in copy `component` (1-based) of the
 * Cantor set, written `j:word`.
 *
 * # Safety
 * `d` must be a live handle, `word` NUL-terminated, `out` writable.
 */
enum HtStatus ht_diagram_apply_word(const struct HtDiagram *d,
                                    size_t component,
                                    const char *word,
                                    char **out);

/**
 * Number of `arity`-ary trees with `leaves` leaves, in decimal.
 *
 * # Safety
 * `out` must be writable.
 */
enum HtStatus ht_count_trees(size_t arity, size_t leaves, char **out);

/**
 * Whether `numbers[0..len]` (each at least 2) are multiplicatively independent.
 *
 * # Safety
 * `numbers` must point to `len` readable values; `out` must be writable.
 */
enum HtStatus ht_independence_check(const uint64_t *numbers, size_t len, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HTGROUPS_H */
