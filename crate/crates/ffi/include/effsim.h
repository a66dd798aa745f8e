#ifndef EFFSIM_H
#define EFFSIM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EffsimStatus {
  EFFSIM_STATUS_OK = 0,
  EFFSIM_STATUS_NULL_POINTER = 1,
  EFFSIM_STATUS_INVALID_ARGUMENT = 2,
  EFFSIM_STATUS_UNKNOWN_PIPELINE = 3,
  EFFSIM_STATUS_UNKNOWN_SUITE = 4,
  EFFSIM_STATUS_PANIC = 5,
} EffsimStatus;

/**
 * Solutions of one queens run.
 */
typedef struct EffsimQueens EffsimQueens;

/**
 * Result of one suite run.
 */
typedef struct EffsimReport EffsimReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *effsim_version(void);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library on this thread.
 */
const char *effsim_last_error(void);

/**
 * Solves the `n`-queens puzzle with the named pipeline.
 *
 * # Safety
 * `pipeline` must be a nul-terminated string and `out` a valid pointer.
 */
enum EffsimStatus effsim_queens_run(const char *pipeline, int64_t n, struct EffsimQueens **out);

/**
 * Number of solutions, or 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t effsim_queens_count(const struct EffsimQueens *h);

/**
 * Board size, which is the length of every solution.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t effsim_queens_width(const struct EffsimQueens *h);

/**
 * Row (1-based) of the queen in `column` (0-based) of solution `index`.
 *
 * # Safety
 * `h` must be null or a live handle; `out` must be null or valid.
 */
enum EffsimStatus effsim_queens_get(const struct EffsimQueens *h,
                                    size_t index,
                                    size_t column,
                                    int64_t *out);

/**
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void effsim_queens_free(struct EffsimQueens *h);

/**
 * Runs the named suite. A report is produced whether or not the suite
 * passes; inspect it with [`effsim_report_failures`].
 *
 * # Safety
 * `suite` must be a nul-terminated string and `out` a valid pointer.
 */
enum EffsimStatus effsim_check(const char *suite,
                               uint64_t trials,
                               uint64_t seed,
                               uint32_t depth,
                               struct EffsimReport **out);

/**
 * Number of failing trials, or 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t effsim_report_failures(const struct EffsimReport *h);

/**
 * The report as JSON, owned by the handle. Null for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
const char *effsim_report_json(const struct EffsimReport *h);

/**
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void effsim_report_free(struct EffsimReport *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EFFSIM_H */
