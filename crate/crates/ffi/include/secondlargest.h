#ifndef SECONDLARGEST_H
#define SECONDLARGEST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define SL_BASELINE_POWER_CAP 0

#define SL_BASELINE_LOGLOG 1

#define SL_BASELINE_SHIFTED_WEIBULL_EXP 2

#define SL_GENERATOR_INDEPENDENCE 0

#define SL_GENERATOR_GUMBEL_HOUGAARD 1

#define SL_GENERATOR_GUMBEL_BARNETT 2

#define SL_GENERATOR_CLAYTON 3

#define SL_ORDER_ST 0

#define SL_ORDER_RH 1

#define SL_SIDE_X 0

#define SL_SIDE_Y 1

typedef enum SlStatus {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_POINTER = 1,
  SL_STATUS_INVALID_ARGUMENT = 2,
  SL_STATUS_OUT_OF_SUPPORT = 3,
  SL_STATUS_EVALUATION_FAILED = 4,
  SL_STATUS_UNKNOWN = 5,
  SL_STATUS_PANIC = 6,
} SlStatus;

typedef enum SlVerdict {
  SL_VERDICT_HOLDS = 0,
  SL_VERDICT_FAILS = 1,
  SL_VERDICT_INCONCLUSIVE = 2,
} SlVerdict;

/**
 * Opaque population handle. Free with [`sl_config_free`].
 */
typedef struct SlConfig SlConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a population of `n` components. `a` and `c` are the baseline
 * parameters; `loglog` ignores both and `shifted_weibull_exp` ignores `c`.
 *
 * # Safety
 * `lambda`, `theta` and `alpha` must each point to `n` readable doubles and
 * `out` to writable storage for one pointer.
 */
enum SlStatus sl_config_new(const double *lambda,
                            const double *theta,
                            const double *alpha,
                            size_t n,
                            int32_t baseline,
                            double a,
                            double c,
                            struct SlConfig **out);

/**
 * Copies one side of a compiled-in fixture such as `"Ex3_1"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum SlStatus sl_config_from_fixture(const char *name, int32_t side, struct SlConfig **out);

/**
 * Attaches an Archimedean generator. `param` is ignored for independence.
 *
 * # Safety
 * `cfg` must be a live handle from this library.
 */
enum SlStatus sl_config_set_generator(struct SlConfig *cfg, int32_t family, double param);

/**
 * Evaluates bounded baselines past their support as written instead of
 * clamping.
 *
 * # Safety
 * `cfg` must be a live handle from this library.
 */
enum SlStatus sl_config_set_extrapolate(struct SlConfig *cfg, bool extrapolate);

/**
 * Number of components, or 0 for a null handle.
 *
 * # Safety
 * `cfg` must be null or a live handle from this library.
 */
size_t sl_config_len(const struct SlConfig *cfg);

/**
 * # Safety
 * `cfg` must be null or a handle from this library not yet freed.
 */
void sl_config_free(struct SlConfig *cfg);

/**
 * CDF of the second-largest component lifetime at `x`.
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum SlStatus sl_cdf_second_largest(const struct SlConfig *cfg, double x, double *out);

/**
 * Reversed hazard rate of the second-largest component lifetime at `x`.
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum SlStatus sl_rh_second_largest(const struct SlConfig *cfg, double x, double *out);

/**
 * Writes the CDF on `points` evenly spaced points of `[lo, hi]` to `out`.
 *
 * # Safety
 * `cfg` must be a live handle and `out` must hold `points` doubles.
 */
enum SlStatus sl_cdf_grid(const struct SlConfig *cfg,
                          double lo,
                          double hi,
                          size_t points,
                          double *out);

/**
 * Checks `X <= Y` in the given order on a grid. `max_violation` may be null.
 *
 * # Safety
 * `x`, `y` must be live handles, `verdict` writable, `max_violation` null
 * or writable.
 */
enum SlStatus sl_check_order(const struct SlConfig *x,
                             const struct SlConfig *y,
                             int32_t order_kind,
                             double lo,
                             double hi,
                             size_t points,
                             enum SlVerdict *verdict,
                             double *max_violation);

/**
 * Runs a theorem check such as `"T3_1"`. `consistent` receives whether the
 * outcome agrees with the theorem. When `record` is non-null it receives a
 * one-line report to be released with [`sl_string_free`].
 *
 * # Safety
 * `theorem` must be a NUL-terminated string, `x`, `y` live handles,
 * `consistent` writable and `record` null or writable.
 */
enum SlStatus sl_run_theorem(const char *theorem,
                             const struct SlConfig *x,
                             const struct SlConfig *y,
                             double lo,
                             double hi,
                             size_t points,
                             bool *consistent,
                             char **record);

/**
 * Message of the last failure on this thread, or null. Owned by the
 * library; valid until the next failing call on the same thread.
 */
const char *sl_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void sl_string_free(char *s);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SECONDLARGEST_H */
