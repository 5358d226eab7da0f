#ifndef OSTROVSKY_H
#define OSTROVSKY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OstroLabel {
  OSTRO_LABEL_REGION1 = 1,
  OSTRO_LABEL_REGION2 = 2,
  OSTRO_LABEL_REGION3 = 3,
  OSTRO_LABEL_REGION4 = 4,
  OSTRO_LABEL_C0 = 10,
  OSTRO_LABEL_C1 = 11,
  OSTRO_LABEL_C2 = 12,
  OSTRO_LABEL_C3 = 13,
  OSTRO_LABEL_ORIGIN = 20,
} OstroLabel;

typedef enum OstroStatus {
  OSTRO_STATUS_OK = 0,
  OSTRO_STATUS_NULL_POINTER = 1,
  OSTRO_STATUS_INVALID_UTF8 = 2,
  OSTRO_STATUS_PARSE_ERROR = 3,
  OSTRO_STATUS_INVALID_ARGUMENT = 4,
  OSTRO_STATUS_COMPUTATION_ERROR = 5,
  OSTRO_STATUS_BLOW_UP = 6,
  OSTRO_STATUS_PANIC = 7,
} OstroStatus;

typedef enum OstroVerdict {
  OSTRO_VERDICT_NO_OBSTRUCTION = 0,
  OSTRO_VERDICT_OBSTRUCTION = 1,
} OstroVerdict;

/**
 * Parsed evolution equation.
 */
typedef struct OstroEquation OstroEquation;

/**
 * Simulation state with its configuration.
 */
typedef struct OstroSimulator OstroSimulator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *ostro_last_error_message(void);

const char *ostro_version(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ostro_string_free(char *s);

/**
 * Parses equation text or a built-in alias (`ostrovsky`, `kdv`).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out_eq` must be writable.
 */
enum OstroStatus ostro_equation_parse(const char *text,
                                      uint32_t max_degree,
                                      struct OstroEquation **out_eq);

/**
 * # Safety
 * `eq` must come from [`ostro_equation_parse`] and not have been freed.
 */
void ostro_equation_free(struct OstroEquation *eq);

/**
 * Dispersion symbol `omega(xi1)` as text.
 *
 * # Safety
 * `eq` must be a live handle; `out_text` must be writable.
 */
enum OstroStatus ostro_equation_omega(const struct OstroEquation *eq, char **out_text);

/**
 * Runs the locality test and returns the verdict and a JSON report.
 *
 * # Safety
 * `eq` must be a live handle; `out_verdict` must be writable; `out_json`
 * may be null when the report is not wanted.
 */
enum OstroStatus ostro_integrability(const struct OstroEquation *eq,
                                     uint32_t max_order,
                                     uint32_t depth,
                                     bool exhaustive,
                                     enum OstroVerdict *out_verdict,
                                     char **out_json);

/**
 * # Safety
 * `out_label` must be writable.
 */
enum OstroStatus ostro_waves_classify(double p, double q, double tol, enum OstroLabel *out_label);

/**
 * Roots of `lambda^4 - q lambda^2 + p`; writes four real and four
 * imaginary parts.
 *
 * # Safety
 * `re` and `im` must each point to 4 writable doubles.
 */
enum OstroStatus ostro_waves_roots(double p, double q, double *re, double *im);

/**
 * Builds a simulator from `key = value` configuration text (the same
 * format the command-line tool reads).
 *
 * # Safety
 * `config` must be a NUL-terminated string; `out_sim` must be writable.
 */
enum OstroStatus ostro_simulator_from_config(const char *config, struct OstroSimulator **out_sim);

/**
 * Builds a simulator from `n` samples on `[0, length)`. The mean is
 * removed.
 *
 * # Safety
 * `values` must point to `n` readable doubles; `out_sim` must be writable.
 */
enum OstroStatus ostro_simulator_new(const double *values,
                                     size_t n,
                                     double length,
                                     double beta,
                                     double gamma,
                                     double dt,
                                     struct OstroSimulator **out_sim);

/**
 * # Safety
 * `sim` must come from this library and not have been freed.
 */
void ostro_simulator_free(struct OstroSimulator *sim);

/**
 * Advances `steps` time steps. On blow-up the state is left at the last
 * finite step and [`OstroStatus::BlowUp`] is returned.
 *
 * # Safety
 * `sim` must be a live handle.
 */
enum OstroStatus ostro_simulator_step(struct OstroSimulator *sim, uint64_t steps);

/**
 * # Safety
 * `sim` must be a live handle; the outputs must be writable.
 */
enum OstroStatus ostro_simulator_invariants(const struct OstroSimulator *sim,
                                            double *out_i,
                                            double *out_p,
                                            double *out_h);

/**
 * Current time, or NaN for a null handle.
 *
 * # Safety
 * `sim` must be a live handle or null.
 */
double ostro_simulator_time(const struct OstroSimulator *sim);

/**
 * Number of grid points, or 0 for a null handle.
 *
 * # Safety
 * `sim` must be a live handle or null.
 */
size_t ostro_simulator_len(const struct OstroSimulator *sim);

/**
 * Copies the field into `buf`, which must hold exactly
 * [`ostro_simulator_len`] doubles.
 *
 * # Safety
 * `sim` must be a live handle; `buf` must point to `len` writable doubles.
 */
enum OstroStatus ostro_simulator_values(const struct OstroSimulator *sim, double *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OSTROVSKY_H */
