#ifndef HYPERTORIC_H
#define HYPERTORIC_H

/* Generated by cbindgen from the hypertoric-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a compute call. Mirrors the CLI exit codes.
 */
typedef enum HypertoricStatus {
  HYPERTORIC_STATUS_OK = 0,
  HYPERTORIC_STATUS_INTERNAL_ERROR = 1,
  HYPERTORIC_STATUS_NULL_ARGUMENT = 2,
  HYPERTORIC_STATUS_INVALID_UTF8 = 3,
  HYPERTORIC_STATUS_PARSE_ERROR = 64,
  HYPERTORIC_STATUS_VALIDATION_ERROR = 65,
  HYPERTORIC_STATUS_NOT_SIMPLE = 66,
  HYPERTORIC_STATUS_ORACLE_MISMATCH = 70,
  HYPERTORIC_STATUS_NOT_FINITE = 71,
} HypertoricStatus;

/**
 * Opaque handle to a completed computation.
 */
typedef struct HypertoricResult HypertoricResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Run the full pipeline on an input JSON document.
 *
 * `input_json` is a NUL-terminated UTF-8 document with the same schema the
 * CLI accepts. When `affinize` is true, non-simple offsets are replaced by
 * a seeded random simple affinization (absent offsets are always
 * affinized). When `check_oracle` is true the Poincaré polynomial is
 * cross-checked degree by degree.
 *
 * On success writes a fresh handle to `out_result` and returns `Ok`. On
 * failure leaves `out_result` untouched, returns the error status, and
 * stores a message retrievable via [`hypertoric_last_error_message`].
 *
 * # Safety
 * `input_json` must point to a valid NUL-terminated string and
 * `out_result` to writable memory for one pointer.
 */
enum HypertoricStatus hypertoric_compute_json(const char *input_json,
                                              bool affinize,
                                              bool check_oracle,
                                              struct HypertoricResult **out_result);

/**
 * Serialized output document. Caller frees with [`hypertoric_string_free`];
 * returns NULL on a NULL handle.
 *
 * # Safety
 * `result` must be NULL or a handle from [`hypertoric_compute_json`].
 */
char *hypertoric_result_json(const struct HypertoricResult *result);

/**
 * Human-readable report with the same numbers as the JSON. Caller frees
 * with [`hypertoric_string_free`]; returns NULL on a NULL handle.
 *
 * # Safety
 * `result` must be NULL or a handle from [`hypertoric_compute_json`].
 */
char *hypertoric_result_report(const struct HypertoricResult *result);

/**
 * Orbifold Euler characteristic, or -1 on a NULL handle.
 *
 * # Safety
 * `result` must be NULL or a handle from [`hypertoric_compute_json`].
 */
int64_t hypertoric_result_euler_characteristic(const struct HypertoricResult *result);

/**
 * Coefficient of the Poincaré polynomial at the given degree (0 where the
 * polynomial is unsupported), or -1 on a NULL handle.
 *
 * # Safety
 * `result` must be NULL or a handle from [`hypertoric_compute_json`].
 */
int64_t hypertoric_result_poincare_coefficient(const struct HypertoricResult *result,
                                               uint64_t degree);

/**
 * Order of the finite stabilizer group, or -1 on a NULL handle.
 *
 * # Safety
 * `result` must be NULL or a handle from [`hypertoric_compute_json`].
 */
int64_t hypertoric_result_group_order(const struct HypertoricResult *result);

/**
 * Message of the last error on this thread, or NULL when the last call
 * succeeded. Caller frees with [`hypertoric_string_free`].
 */
char *hypertoric_last_error_message(void);

/**
 * Library version string; static storage, do not free.
 */
const char *hypertoric_version(void);

/**
 * Release a result handle. NULL is a no-op.
 *
 * # Safety
 * `result` must be NULL or an unfreed handle from
 * [`hypertoric_compute_json`].
 */
void hypertoric_result_free(struct HypertoricResult *result);

/**
 * Release a string returned by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must be NULL or an unfreed string returned by this library.
 */
void hypertoric_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERTORIC_H */
