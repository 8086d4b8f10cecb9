#ifndef MALLOWS_BINOMIAL_H
#define MALLOWS_BINOMIAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Fitting method selector.
 */
typedef enum MbMethod {
  MB_METHOD_BEST_FIRST = 0,
  MB_METHOD_EXHAUSTIVE = 1,
} MbMethod;

/**
 * Result codes.
 */
typedef enum MbStatus {
  MB_STATUS_OK = 0,
  MB_STATUS_NULL_POINTER = 1,
  MB_STATUS_INVALID_ARGUMENT = 2,
  MB_STATUS_DOMAIN = 3,
  MB_STATUS_TOO_MANY_OBJECTS = 4,
  MB_STATUS_BUFFER_TOO_SMALL = 5,
  MB_STATUS_INTERNAL = 6,
} MbStatus;

/**
 * Opaque bootstrap result handle.
 */
typedef struct MbBootstrap MbBootstrap;

/**
 * Opaque dataset handle.
 */
typedef struct MbDataset MbDataset;

/**
 * Opaque fit result handle.
 */
typedef struct MbFit MbFit;

/**
 * Solver settings; obtain defaults from [`mb_fit_options_default`].
 */
typedef struct MbFitOptions {
  double p_lower;
  double p_upper;
  double theta_lower;
  double theta_upper;
  size_t exhaustive_cap;
  enum MbMethod method;
} MbFitOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into this library from the same thread.
 */
const char *mb_last_error(void);

struct MbFitOptions mb_fit_options_default(void);

/**
 * Builds a dataset from row-major `judges x objects` arrays. `rankings`
 * lists 0-based object indices, most preferred first.
 */
enum MbStatus mb_dataset_new(const uint32_t *ratings,
                             const uint32_t *rankings,
                             size_t judges,
                             size_t objects,
                             uint32_t max_rating,
                             struct MbDataset **out);

/**
 * Simulates a dataset with true qualities `p` and strength `theta`.
 */
enum MbStatus mb_dataset_simulate(const double *p,
                                  size_t objects,
                                  double theta,
                                  size_t judges,
                                  uint32_t max_rating,
                                  uint64_t seed,
                                  struct MbDataset **out);

void mb_dataset_free(struct MbDataset *data);

size_t mb_dataset_judges(const struct MbDataset *data);

size_t mb_dataset_objects(const struct MbDataset *data);

/**
 * Log-likelihood of `data` at `(p, theta)`, consensus taken as the ascending order of `p`.
 */
enum MbStatus mb_log_likelihood(const struct MbDataset *data,
                                const double *p,
                                size_t objects,
                                double theta,
                                double *out);

/**
 * Exact maximum likelihood fit. `options` may be null for defaults.
 */
enum MbStatus mb_fit(const struct MbDataset *data,
                     const struct MbFitOptions *options,
                     struct MbFit **out);

void mb_fit_free(struct MbFit *fit);

/**
 * Copies `p_hat` into `out_p` (length at least `objects`).
 */
enum MbStatus mb_fit_p(const struct MbFit *fit, double *out_p, size_t len);

double mb_fit_theta(const struct MbFit *fit);

double mb_fit_loglik(const struct MbFit *fit);

uint64_t mb_fit_nodes_explored(const struct MbFit *fit);

/**
 * Nonzero when theta or any p_j was pinned to its bound.
 */
int32_t mb_fit_clamped(const struct MbFit *fit);

/**
 * Copies the consensus (0-based objects, most preferred first) into `out`.
 */
enum MbStatus mb_fit_consensus(const struct MbFit *fit, size_t *out, size_t len);

/**
 * Percentile bootstrap with `replicates` resamples at level `alpha`.
 */
enum MbStatus mb_bootstrap(const struct MbDataset *data,
                           const struct MbFitOptions *options,
                           size_t replicates,
                           double alpha,
                           uint64_t seed,
                           struct MbBootstrap **out);

void mb_bootstrap_free(struct MbBootstrap *boot);

/**
 * Interval bounds for every `p_j` (length at least `objects` each).
 */
enum MbStatus mb_bootstrap_p_intervals(const struct MbBootstrap *boot,
                                       double *lower,
                                       double *upper,
                                       size_t len);

enum MbStatus mb_bootstrap_theta_interval(const struct MbBootstrap *boot,
                                          double *lower,
                                          double *upper);

double mb_bootstrap_clamp_rate(const struct MbBootstrap *boot);

enum MbStatus mb_psi(double theta, size_t objects, double *out);

enum MbStatus mb_kappa(double theta, size_t objects, double *out);

enum MbStatus mb_mallows_mean_var(double theta, size_t objects, double *mean, double *variance);

/**
 * Kendall distance between two 0-based rankings of `objects` items.
 */
enum MbStatus mb_kendall_distance(const uint32_t *a,
                                  const uint32_t *b,
                                  size_t objects,
                                  uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MALLOWS_BINOMIAL_H */
