#ifndef HYPERSTRUCT_H
#define HYPERSTRUCT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum HsStatus {
  HsOk = 0,
  /**
   * A required pointer argument was null.
   */
  HsNullArgument = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  HsInvalidUtf8 = 2,
  /**
   * The input could not be parsed.
   */
  HsParseError = 3,
  /**
   * The table parsed but violates the hypergroup axioms.
   */
  HsAxiomError = 4,
  /**
   * The computation itself failed; see hs_last_error().
   */
  HsComputeError = 5,
} HsStatus;

/**
 * Opaque handle to a validated hypergroup.
 */
typedef struct HsHypergroup HsHypergroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a Cayley table (JSON or whitespace text) and validates the
 * hypergroup axioms. On HS_OK, *out owns a handle the caller must
 * release with hs_free().
 *
 * # Safety
 * `text` must be a valid nul-terminated string; `out` must be a valid
 * pointer.
 */
enum HsStatus hs_parse(const char *text, struct HsHypergroup **out);

/**
 * Releases a handle returned by hs_parse(). Null is a no-op.
 *
 * # Safety
 * `h` must be null or a pointer obtained from hs_parse() that has not
 * been freed.
 */
void hs_free(struct HsHypergroup *h);

/**
 * Number of elements, or 0 if the handle is null.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
uint32_t hs_size(const struct HsHypergroup *h);

/**
 * Classification flags as a JSON object string in *out; free with
 * hs_string_free().
 *
 * # Safety
 * `h` must be a live handle; `out` must be a valid pointer.
 */
enum HsStatus hs_classify_json(const struct HsHypergroup *h, char **out);

/**
 * Blocks of a named relation (beta|gamma|alpha|delta|nabla|lambda|
 * mod:<names>) as a JSON array of name arrays in *out; `cap` is the
 * tuple-length cap for alpha. Free with hs_string_free().
 *
 * # Safety
 * `h` must be a live handle; `rel` a valid nul-terminated string; `out`
 * a valid pointer.
 */
enum HsStatus hs_relation_blocks_json(const struct HsHypergroup *h,
                                      const char *rel,
                                      uint32_t cap,
                                      char **out);

/**
 * Invariant-factor form of the quotient group by a named strongly
 * regular relation, e.g. "Z_4", in *out. Free with hs_string_free().
 *
 * # Safety
 * Same contract as hs_relation_blocks_json().
 */
enum HsStatus hs_quotient_invariants(const struct HsHypergroup *h,
                                     const char *rel,
                                     uint32_t cap,
                                     char **out);

/**
 * Frees a string returned by any hs_*_json/invariants function. Null is
 * a no-op.
 *
 * # Safety
 * `s` must be null or a string returned by this library that has not
 * been freed.
 */
void hs_string_free(char *s);

/**
 * Message of the last error on this thread, or null if none. The
 * pointer is owned by the library and valid until the next failing call
 * on the same thread.
 */
const char *hs_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERSTRUCT_H */
