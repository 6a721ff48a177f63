#ifndef KANFORGE_H
#define KANFORGE_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum KfStatus {
  KF_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  KF_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  KF_STATUS_INVALID_UTF8 = 2,
  /**
   * The algebra text did not parse.
   */
  KF_STATUS_PARSE_ERROR = 3,
  /**
   * Unknown variety or construction name.
   */
  KF_STATUS_UNKNOWN_NAME = 4,
  /**
   * The algebra lacks an operation the call needs.
   */
  KF_STATUS_MISSING_OPERATION = 5,
  /**
   * A construction's precondition does not hold.
   */
  KF_STATUS_CONSTRUCTION_FAILED = 6,
  /**
   * An output buffer is too short.
   */
  KF_STATUS_BUFFER_TOO_SMALL = 7,
  /**
   * Any other error.
   */
  KF_STATUS_INTERNAL = 8,
  /**
   * The library panicked. The handles passed in should not be reused.
   */
  KF_STATUS_PANIC = 9,
} KfStatus;

/**
 * Opaque algebra handle.
 */
typedef struct KfAlgebra KfAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an algebra from its text form.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum KfStatus kf_algebra_parse(const char *text, struct KfAlgebra **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `a` must come from this library and not be freed twice.
 */
void kf_algebra_free(struct KfAlgebra *a);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t kf_algebra_size(const struct KfAlgebra *a);

/**
 * Renders the algebra in the text format accepted by `kf_algebra_parse`.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum KfStatus kf_algebra_print(const struct KfAlgebra *a, char **out);

/**
 * Checks `a` against the named variety. `verdict` receives the result;
 * `json_out`, when not null, receives the full report as JSON.
 *
 * # Safety
 * Pointers must be valid; `json_out` may be null.
 */
enum KfStatus kf_check_variety(const struct KfAlgebra *a,
                               const char *variety,
                               bool *verdict,
                               char **json_out);

/**
 * Builds a derived algebra: `kalman`, `monteiro`, `center-slice`,
 * `diamond`, `box` or `theta`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum KfStatus kf_apply(const struct KfAlgebra *a, const char *construction, struct KfAlgebra **out);

/**
 * Searches for an isomorphism over every symbol both algebras carry.
 * On success `found` tells whether one exists; if so, `mapping[i]` is the
 * index of the image of element `i`. `mapping` may be null to only test,
 * otherwise it must hold at least `kf_algebra_size(a)` entries.
 *
 * # Safety
 * Pointers must be valid and `mapping` must hold `mapping_len` entries.
 */
enum KfStatus kf_find_isomorphism(const struct KfAlgebra *a,
                                  const struct KfAlgebra *b,
                                  bool *found,
                                  size_t *mapping,
                                  size_t mapping_len);

/**
 * Renders the Hasse diagram in DOT.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum KfStatus kf_export_dot(const struct KfAlgebra *a, char **out);

/**
 * Runs the theorem battery. `passed` receives the overall result;
 * `report_out`, when not null, receives the text report.
 *
 * # Safety
 * Pointers must be valid; `report_out` may be null.
 */
enum KfStatus kf_verify(const struct KfAlgebra *a, bool *passed, char **report_out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void kf_string_free(char *s);

/**
 * Message for the last failed call on this thread, empty after a
 * successful one. The pointer stays valid until the next call.
 */
const char *kf_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KANFORGE_H */
