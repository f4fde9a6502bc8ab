#ifndef EXPBIJ_H
#define EXPBIJ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum ExpbijClassification {
  EXPBIJ_CLASSIFICATION_BIJECTIVE_FOR_ALL_C = 0,
  EXPBIJ_CLASSIFICATION_INJECTIVE_NOT_BIJECTIVE = 1,
  EXPBIJ_CLASSIFICATION_NOT_INJECTIVE = 2,
  EXPBIJ_CLASSIFICATION_INCONCLUSIVE = 3,
} ExpbijClassification;

typedef enum ExpbijStatus {
  EXPBIJ_STATUS_OK = 0,
  EXPBIJ_STATUS_NULL_POINTER = 1,
  EXPBIJ_STATUS_INVALID_INPUT = 2,
  EXPBIJ_STATUS_RANK_DEFICIENT = 3,
  EXPBIJ_STATUS_DIMENSION_MISMATCH = 4,
  EXPBIJ_STATUS_CAP_EXCEEDED = 5,
  EXPBIJ_STATUS_INTERNAL = 6,
  EXPBIJ_STATUS_PANIC = 7,
} ExpbijStatus;

/**
 * An exact rational matrix.
 */
typedef struct ExpbijMatrix ExpbijMatrix;

/**
 * An analysis report.
 */
typedef struct ExpbijReport ExpbijReport;

/**
 * A coefficient/exponent matrix pair.
 */
typedef struct ExpbijSpec ExpbijSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next library call on the same thread.
 */
const char *expbij_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void expbij_string_free(char *s);

/**
 * Parses a matrix from JSON (`{"rows", "cols", "entries"}` with integer or
 * `"p/q"` entries).
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum ExpbijStatus expbij_matrix_from_json(const char *json, struct ExpbijMatrix **out);

/**
 * Builds a matrix from `rows * cols` row-major numerators over `denominator`.
 *
 * # Safety
 * `entries` must point to `rows * cols` readable values; `out` must be writable.
 */
enum ExpbijStatus expbij_matrix_new(size_t rows,
                                    size_t cols,
                                    const int64_t *entries,
                                    int64_t denominator,
                                    struct ExpbijMatrix **out);

/**
 * # Safety
 * `m` must be a live matrix handle; `rows` and `cols` must be writable.
 */
enum ExpbijStatus expbij_matrix_shape(const struct ExpbijMatrix *m, size_t *rows, size_t *cols);

/**
 * # Safety
 * `m` must be a live matrix handle; `out` must be writable.
 */
enum ExpbijStatus expbij_matrix_rank(const struct ExpbijMatrix *m, size_t *out);

/**
 * # Safety
 * `m` must be null or a matrix handle not yet freed.
 */
void expbij_matrix_free(struct ExpbijMatrix *m);

/**
 * Pairs a coefficient and an exponent matrix. Both must have full row rank
 * and the same number of columns. The matrices are copied.
 *
 * # Safety
 * `coefficients` and `exponents` must be live matrix handles; `out` must be writable.
 */
enum ExpbijStatus expbij_spec_new(const struct ExpbijMatrix *coefficients,
                                  const struct ExpbijMatrix *exponents,
                                  struct ExpbijSpec **out);

/**
 * # Safety
 * `s` must be null or a spec handle not yet freed.
 */
void expbij_spec_free(struct ExpbijSpec *s);

/**
 * Runs the full analysis. `caps_json` may be null for the default caps;
 * `robust` is one of `exponents`, `coefficients`, `both`, `all`, or null for `all`.
 *
 * # Safety
 * `spec` must be a live spec handle; string arguments must be null or
 * nul-terminated; `out` must be writable.
 */
enum ExpbijStatus expbij_analyze(const struct ExpbijSpec *spec,
                                 const char *caps_json,
                                 const char *robust,
                                 struct ExpbijReport **out);

/**
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum ExpbijStatus expbij_report_from_json(const char *json, struct ExpbijReport **out);

/**
 * Canonical JSON of the report; free the result with [`expbij_string_free`].
 *
 * # Safety
 * `report` must be a live report handle; `out` must be writable.
 */
enum ExpbijStatus expbij_report_to_json(const struct ExpbijReport *report, char **out);

/**
 * # Safety
 * `report` must be a live report handle; `out` must be writable.
 */
enum ExpbijStatus expbij_report_classification(const struct ExpbijReport *report,
                                               enum ExpbijClassification *out);

/**
 * Re-checks every certificate in the report against its embedded input.
 *
 * # Safety
 * `report` must be a live report handle; `out` must be writable.
 */
enum ExpbijStatus expbij_report_verify(const struct ExpbijReport *report, bool *out);

/**
 * # Safety
 * `r` must be null or a report handle not yet freed.
 */
void expbij_report_free(struct ExpbijReport *r);

/**
 * Applies the deficiency-zero criteria to a network given as JSON and
 * returns the network report as JSON.
 *
 * # Safety
 * `network_json` must be nul-terminated; `caps_json` null or nul-terminated;
 * `out` must be writable.
 */
enum ExpbijStatus expbij_crn_analyze(const char *network_json, const char *caps_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXPBIJ_H */
