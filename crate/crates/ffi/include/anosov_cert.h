#ifndef ANOSOV_CERT_H
#define ANOSOV_CERT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum AnosovStatus {
  ANOSOV_STATUS_OK = 0,
  ANOSOV_STATUS_NULL_POINTER = 1,
  ANOSOV_STATUS_INVALID_UTF8 = 2,
  ANOSOV_STATUS_INVALID_CONFIG = 3,
  ANOSOV_STATUS_IO = 4,
  ANOSOV_STATUS_COMPUTATION = 5,
  ANOSOV_STATUS_GEOMETRY = 6,
  ANOSOV_STATUS_PANIC = 7,
} AnosovStatus;

/**
 * Outcome of a certification run.
 */
typedef enum AnosovVerdict {
  ANOSOV_VERDICT_CERTIFIED = 0,
  ANOSOV_VERDICT_NOT_CERTIFIED_AT_THIS_K = 1,
  ANOSOV_VERDICT_REGULARITY_OBSTRUCTION = 2,
  ANOSOV_VERDICT_TOLERANCE_COLLISION = 3,
} AnosovVerdict;

/**
 * The result of a certification run.
 */
typedef struct AnosovCertificate AnosovCertificate;

/**
 * A validated job configuration.
 */
typedef struct AnosovJob AnosovJob;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays valid
 * until the next call into this library on the same thread.
 */
const char *anosov_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *anosov_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void anosov_string_free(char *s);

/**
 * Parses and validates a JSON job configuration.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum AnosovStatus anosov_job_from_json(const char *json, struct AnosovJob **out);

/**
 * The built-in genus-two example with half length `k = 4`.
 *
 * # Safety
 * `out` must be writable.
 */
enum AnosovStatus anosov_job_builtin_example(struct AnosovJob **out);

/**
 * Changes the half length `k` of a job.
 *
 * # Safety
 * `job` must be a live handle.
 */
enum AnosovStatus anosov_job_set_half_length(struct AnosovJob *job, size_t k);

/**
 * Serializes a job configuration to JSON.
 *
 * # Safety
 * `job` must be a live handle; `out` must be writable.
 */
enum AnosovStatus anosov_job_to_json(const struct AnosovJob *job, char **out);

/**
 * # Safety
 * `job` must be null or a live handle, freed at most once.
 */
void anosov_job_free(struct AnosovJob *job);

/**
 * Runs the certification pipeline. With a non-null `words`, pairs come from that
 * word-list text (one word of length `2k` per line) instead of the ball.
 *
 * # Safety
 * `job` must be a live handle; `words` null or NUL-terminated; `out` writable.
 */
enum AnosovStatus anosov_certify(const struct AnosovJob *job,
                                 const char *words,
                                 struct AnosovCertificate **out);

/**
 * # Safety
 * `cert` must be a live handle; `out` writable.
 */
enum AnosovStatus anosov_certificate_verdict(const struct AnosovCertificate *cert,
                                             enum AnosovVerdict *out);

/**
 * Spacing `S` and straightness `ε` of the survey.
 *
 * # Safety
 * `cert` must be a live handle; `spacing` and `eps` writable.
 */
enum AnosovStatus anosov_certificate_stats(const struct AnosovCertificate *cert,
                                           double *spacing,
                                           double *eps);

/**
 * Serializes a certificate to JSON.
 *
 * # Safety
 * `cert` must be a live handle; `out` writable.
 */
enum AnosovStatus anosov_certificate_to_json(const struct AnosovCertificate *cert, char **out);

/**
 * # Safety
 * `cert` must be null or a live handle, freed at most once.
 */
void anosov_certificate_free(struct AnosovCertificate *cert);

/**
 * `ε_max = arccos(−1/(d−1))`; NaN for `dim < 2`.
 */
double anosov_eps_max(size_t dim);

/**
 * `d_α(p, q)` for real points given as row-major `dim × dim` arrays.
 *
 * # Safety
 * `p` and `q` must point to `dim * dim` doubles; `out` writable.
 */
enum AnosovStatus anosov_d_alpha(const double *p, const double *q, size_t dim, double *out);

/**
 * Sorted vector-valued distance `d⃗(p, q)` written to `out[0..dim]`.
 *
 * # Safety
 * `p` and `q` must point to `dim * dim` doubles; `out` to `dim` writable doubles.
 */
enum AnosovStatus anosov_vec_distance(const double *p, const double *q, size_t dim, double *out);

/**
 * Distance from `p` to the parallel set of a transverse hyperplane (covector) and
 * line.
 *
 * # Safety
 * `p` must point to `dim * dim` doubles, `hyperplane` and `line` to `dim`
 * doubles; `out` writable.
 */
enum AnosovStatus anosov_dist_to_parallel_set(const double *p,
                                              const double *hyperplane,
                                              const double *line,
                                              size_t dim,
                                              double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ANOSOV_CERT_H */
