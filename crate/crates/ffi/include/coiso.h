#ifndef COISO_H
#define COISO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CoisoStatus {
  COISO_STATUS_OK = 0,
  /**
   * The computation ran and at least one check failed.
   */
  COISO_STATUS_CHECK_FAILED = 1,
  /**
   * Bad model, unknown name or bad arguments.
   */
  COISO_STATUS_INPUT_ERROR = 2,
  COISO_STATUS_NULL_POINTER = 3,
  COISO_STATUS_INVALID_UTF8 = 4,
  COISO_STATUS_PANIC = 5,
} CoisoStatus;

/**
 * A finished command report.
 */
typedef struct CoisoReport CoisoReport;

/**
 * A loaded, validated model.
 */
typedef struct CoisoWorkspace CoisoWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the next call.
 */
const char *coiso_last_error(void);

/**
 * Parses a JSON model. The model must use the rational field.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum CoisoStatus coiso_workspace_load(const char *json, struct CoisoWorkspace **out);

/**
 * The shipped fixtures.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CoisoStatus coiso_workspace_shipped(struct CoisoWorkspace **out);

/**
 * # Safety
 * `ws` must come from a load function and not be used afterwards; null is ignored.
 */
void coiso_workspace_free(struct CoisoWorkspace *ws);

/**
 * Dimensions of `A_tot`, `A_N`, `A_0` and the reduced algebra of a named triple.
 *
 * # Safety
 * `ws` must be a live workspace, `name` a nul-terminated string and `dims` room for 4 values.
 */
enum CoisoStatus coiso_triple_dims(const struct CoisoWorkspace *ws, const char *name, size_t *dims);

/**
 * Dimensions of `E_tot`, `E_N`, `E_0` of a named bimodule.
 *
 * # Safety
 * `ws` must be a live workspace, `name` a nul-terminated string and `dims` room for 3 values.
 */
enum CoisoStatus coiso_bimodule_dims(const struct CoisoWorkspace *ws,
                                     const char *name,
                                     size_t *dims);

/**
 * Runs a `coiso` command line (without the program name) and returns its JSON report.
 * The status is `CHECK_FAILED` when the report contains a failing check; `*out` is still set.
 *
 * # Safety
 * `argv` must hold `argc` nul-terminated strings and `out` be a valid pointer.
 */
enum CoisoStatus coiso_run(const char *const *argv, size_t argc, struct CoisoReport **out);

/**
 * JSON text of a report, owned by the report.
 *
 * # Safety
 * `r` must be a live report or null.
 */
const char *coiso_report_json(const struct CoisoReport *r);

/**
 * 1 when every check passed, 0 otherwise or for null.
 *
 * # Safety
 * `r` must be a live report or null.
 */
int32_t coiso_report_passed(const struct CoisoReport *r);

/**
 * # Safety
 * `r` must come from [`coiso_run`] and not be used afterwards; null is ignored.
 */
void coiso_report_free(struct CoisoReport *r);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* COISO_H */
