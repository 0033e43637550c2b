#ifndef SATPOSET_H
#define SATPOSET_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SatposetStatus {
  SATPOSET_STATUS_OK = 0,
  SATPOSET_STATUS_NULL_ARGUMENT = 1,
  SATPOSET_STATUS_INVALID_ARGUMENT = 2,
  SATPOSET_STATUS_PARSE_ERROR = 3,
  SATPOSET_STATUS_INVALID_POSET = 4,
  SATPOSET_STATUS_CONTRACT_VIOLATION = 5,
  SATPOSET_STATUS_IO_ERROR = 6,
  SATPOSET_STATUS_PANIC = 7,
} SatposetStatus;

typedef enum SatposetConstruction {
  SATPOSET_CONSTRUCTION_BUTTERFLY = 0,
  SATPOSET_CONSTRUCTION_N = 1,
  SATPOSET_CONSTRUCTION_K2K = 2,
  SATPOSET_CONSTRUCTION_KKK = 3,
} SatposetConstruction;

typedef enum SatposetTheorem {
  SATPOSET_THEOREM_LEMMA1 = 0,
  SATPOSET_THEOREM_THEOREM2 = 1,
  SATPOSET_THEOREM_THEOREM3 = 2,
  SATPOSET_THEOREM_PROP4 = 3,
} SatposetTheorem;

/**
 * Opaque family handle.
 */
typedef struct SatposetFamily SatposetFamily;

/**
 * Opaque poset handle.
 */
typedef struct SatposetPoset SatposetPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *satposet_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void satposet_string_free(char *s);

/**
 * Parse a family in the text format (one set per line). `n = 0` infers the
 * ground set from the largest element.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum SatposetStatus satposet_family_parse(const char *text, size_t n, struct SatposetFamily **out);

/**
 * Build a family from subset bitmasks (element `i` is bit `i - 1`).
 *
 * # Safety
 * `bits` must point to `len` readable values (or be NULL with `len = 0`).
 */
enum SatposetStatus satposet_family_from_bits(size_t n,
                                              const uint32_t *bits,
                                              size_t len,
                                              struct SatposetFamily **out);

/**
 * # Safety
 * `f` must be NULL or a handle from this library, freed once.
 */
void satposet_family_free(struct SatposetFamily *f);

/**
 * Number of members; 0 for NULL.
 *
 * # Safety
 * `f` must be NULL or a live family handle.
 */
size_t satposet_family_len(const struct SatposetFamily *f);

/**
 * Ground set size; 0 for NULL.
 *
 * # Safety
 * `f` must be NULL or a live family handle.
 */
size_t satposet_family_ground(const struct SatposetFamily *f);

/**
 * Bitmask of the `i`-th member in canonical order.
 *
 * # Safety
 * `f` must be a live family handle and `out_bits` writable.
 */
enum SatposetStatus satposet_family_member(const struct SatposetFamily *f,
                                           size_t i,
                                           uint32_t *out_bits);

/**
 * Family in the text format.
 *
 * # Safety
 * `f` must be a live family handle and `out` writable.
 */
enum SatposetStatus satposet_family_to_text(const struct SatposetFamily *f, char **out);

/**
 * One of the explicit constructions; `k` is ignored for the butterfly and
 * N families.
 *
 * # Safety
 * `out` must be writable.
 */
enum SatposetStatus satposet_construct(enum SatposetConstruction kind,
                                       size_t n,
                                       size_t k,
                                       struct SatposetFamily **out);

struct SatposetPoset *satposet_poset_butterfly(void);

struct SatposetPoset *satposet_poset_n(void);

/**
 * Complete bipartite poset with every bottom below every top.
 *
 * # Safety
 * `out` must be writable.
 */
enum SatposetStatus satposet_poset_complete_bipartite(size_t bottoms,
                                                      size_t tops,
                                                      struct SatposetPoset **out);

/**
 * Poset from JSON `{"size": m, "less": [[i, j], ...]}`; the relation is
 * transitively closed before validation.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum SatposetStatus satposet_poset_from_json(const char *json, struct SatposetPoset **out);

/**
 * # Safety
 * `q` must be NULL or a handle from this library, freed once.
 */
void satposet_poset_free(struct SatposetPoset *q);

/**
 * Number of poset elements; 0 for NULL.
 *
 * # Safety
 * `q` must be NULL or a live poset handle.
 */
size_t satposet_poset_size(const struct SatposetPoset *q);

/**
 * # Safety
 * Handles must be live and `out` writable.
 */
enum SatposetStatus satposet_is_free(const struct SatposetFamily *f,
                                     const struct SatposetPoset *q,
                                     bool *out);

/**
 * Saturation report as JSON: `free`, `saturated`, `unsaturated`, `witness`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum SatposetStatus satposet_saturation_report_json(const struct SatposetFamily *f,
                                                    const struct SatposetPoset *q,
                                                    bool fail_fast,
                                                    char **out);

/**
 * An induced copy as a JSON witness, or the string `null` when the family
 * is free.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum SatposetStatus satposet_find_copy_json(const struct SatposetFamily *f,
                                            const struct SatposetPoset *q,
                                            char **out);

/**
 * Complete a free seed to a saturated family in canonical order.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum SatposetStatus satposet_greedy_saturate(const struct SatposetFamily *seed,
                                             const struct SatposetPoset *q,
                                             struct SatposetFamily **out);

/**
 * Run a lower-bound verifier and return its report as JSON. A report that
 * did not pass is still `SATPOSET_STATUS_OK`; read its `passed` field.
 *
 * # Safety
 * `f` must be live and `out` writable.
 */
enum SatposetStatus satposet_verify_json(const struct SatposetFamily *f,
                                         enum SatposetTheorem theorem,
                                         char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SATPOSET_H */
