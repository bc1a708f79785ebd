/*
 * C interface to the fisherbound library.
 *
 * All functions return an fb_status; on failure a human-readable message is
 * available from fb_last_error() on the calling thread until the next call
 * into the library from that thread. Handles are opaque and owned by the
 * caller, who releases them with the matching *_destroy function.
 */
#ifndef FISHERBOUND_H
#define FISHERBOUND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FISHERBOUND_BUILDING)
#    define FB_API __declspec(dllexport)
#  else
#    define FB_API __declspec(dllimport)
#  endif
#else
#  define FB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fb_status {
  FB_OK = 0,
  FB_ERR_INVALID_ARGUMENT = 1,
  FB_ERR_DEGENERATE_DISTRIBUTION = 2,
  FB_ERR_INFEASIBLE_MOMENTS = 3,
  FB_ERR_DEGENERATE_DIRECTION = 4,
  FB_ERR_ZERO_INFORMATION = 5,
  FB_ERR_INVALID_INFORMATION = 6,
  FB_ERR_PARAMETER_DOMAIN = 7,
  FB_ERR_UNSUPPORTED_ANALYTIC = 8,
  FB_ERR_INSUFFICIENT_SAMPLES = 9,
  FB_ERR_GRID_MISMATCH = 10,
  FB_ERR_ORACLE = 11,
  FB_ERR_INTERNAL = 99
} fb_status;

typedef enum fb_model_kind {
  FB_MODEL_GAUSSIAN = 0,
  FB_MODEL_EXPONENTIAL = 1,
  FB_MODEL_LAPLACE_SCALE = 2,
  FB_MODEL_BERNOULLI = 3,
  FB_MODEL_POISSON = 4,
  FB_MODEL_HARD_LIMITER = 5,
  FB_MODEL_SQUARING = 6,
  FB_MODEL_SOFT_LIMITER = 7
} fb_model_kind;

typedef enum fb_case {
  FB_CASE_GENERAL = 0,
  FB_CASE_CONSTANT_FIRST_MOMENT = 1,
  FB_CASE_CONSTANT_SECOND_MOMENT = 2,
  FB_CASE_SYMMETRIC = 3,
  FB_CASE_SIMPLIFYING_CHARACTERISTIC = 4,
  FB_CASE_DEGENERATE = 5
} fb_case;

typedef enum fb_sweep_mode {
  FB_SWEEP_ANALYTIC = 0,
  FB_SWEEP_MONTE_CARLO = 1
} fb_sweep_mode;

typedef struct fb_moment_point {
  double theta;
  double mu1;
  double mu2;
  double mu3bar;
  double mu4bar;
  double dmu1;
  double dmu2;
} fb_moment_point;

typedef struct fb_central_moments {
  double mu1;
  double mu2;
  double mu3bar;
  double mu4bar;
} fb_central_moments;

typedef struct fb_bound_result {
  double beta_star;
  double s_value;
  double denominator_at_beta_star;
  fb_case bound_case;
} fb_bound_result;

typedef struct fb_sim_config {
  uint64_t n_samples;
  uint64_t base_seed;
  double fd_step;
  int use_common_random_numbers;
} fb_sim_config;

typedef struct fb_sweep_record {
  fb_moment_point moments;
  double beta_star;
  double s_value;
  int has_f_exact;
  double f_exact;
  double f_input;
  double loss_db;
  fb_case bound_case;
} fb_sweep_record;

/* Value of -inf dB (S = 0) in fb_sweep_record.loss_db and figure tables. */
#define FB_NEGATIVE_INFINITY_DB (-999.0)

typedef struct fb_model fb_model;
typedef struct fb_sweep fb_sweep;
typedef struct fb_table fb_table;
typedef struct fb_report fb_report;

typedef double (*fb_map_fn)(double theta, void* user_data);

FB_API const char* fb_version(void);
FB_API const char* fb_last_error(void);
FB_API const char* fb_status_name(fb_status status);
FB_API const char* fb_case_name(fb_case bound_case);
FB_API const char* fb_model_kind_name(fb_model_kind kind);
/* Parses names such as "gaussian", "laplace-scale", "hard-limiter". */
FB_API fb_status fb_model_kind_from_name(const char* name, fb_model_kind* out);

/* Defaults: 10^6 samples, seed 42, step 0.01, common random numbers on. */
FB_API fb_sim_config fb_sim_config_default(void);

/* ---- moments ---------------------------------------------------------- */
FB_API fb_status fb_normalize_moments(double mu1, double mu2, double mu3, double mu4,
                                      double* mu3bar, double* mu4bar);
FB_API double fb_pearson_slack(double mu3bar, double mu4bar);
FB_API fb_status fb_validate_moment_point(const fb_moment_point* point);

/* ---- bound ------------------------------------------------------------ */
FB_API fb_status fb_quadratic_ratio(double beta, double a, double b, double c, double d,
                                    double* out);
FB_API fb_status fb_optimal_beta(double a, double b, double c, double d, double* out);
FB_API fb_status fb_fisher_bound(const fb_moment_point* point, fb_bound_result* out);
FB_API fb_status fb_crlb_variance(double fisher, int64_t n, double* out);

/* ---- models ----------------------------------------------------------- */
/* gamma is used by the hard limiter, zeta by the soft limiter. */
FB_API fb_status fb_model_create(fb_model_kind kind, double gamma, double zeta, fb_model** out);
FB_API void fb_model_destroy(fb_model* model);
/* Replace nu(theta) / nu1(theta). The callbacks must stay valid for the model's lifetime. */
FB_API fb_status fb_model_set_mean_map(fb_model* model, fb_map_fn value, fb_map_fn derivative,
                                       void* user_data);
FB_API fb_status fb_model_set_variance_map(fb_model* model, fb_map_fn value,
                                           fb_map_fn derivative, void* user_data);
/* Polynomial maps sum_k coeffs[k] theta^k. */
FB_API fb_status fb_model_set_mean_polynomial(fb_model* model, const double* coeffs, size_t n);
FB_API fb_status fb_model_set_variance_polynomial(fb_model* model, const double* coeffs,
                                                  size_t n);
FB_API fb_status fb_model_moments(const fb_model* model, double theta, fb_moment_point* out);
/* *has_value is set to 0 when no closed form exists. */
FB_API fb_status fb_model_exact_fisher(const fb_model* model, double theta, int* has_value,
                                       double* out);
FB_API fb_status fb_model_input_fisher(const fb_model* model, double theta, double* out);
FB_API fb_status fb_model_apply_nonlinearity(const fb_model* model, double y, double* out);
/* Writes n samples into out (caller-allocated). */
FB_API fb_status fb_model_sample(const fb_model* model, double theta, size_t n, uint64_t seed,
                                 double* out);

/* ---- Monte Carlo ------------------------------------------------------ */
FB_API fb_status fb_estimate_moments(const double* samples, size_t n, fb_central_moments* out);
FB_API fb_status fb_estimate_moment_derivatives(const fb_model* model, double theta,
                                                const fb_sim_config* config, double* dmu1,
                                                double* dmu2);
FB_API fb_status fb_measure_moment_point(const fb_model* model, double theta,
                                         const fb_sim_config* config, fb_moment_point* out);
FB_API fb_status fb_fisher_oracle_squaring(double theta, double* out);
FB_API fb_status fb_empirical_fisher_check(const fb_model* model, double theta,
                                           const fb_sim_config* config, double* out);

/* ---- analysis --------------------------------------------------------- */
FB_API fb_status fb_information_loss(double s_z, double f_y, double* ratio, double* db);
FB_API fb_status fb_sweep_run(const fb_model* model, const double* grid, size_t n,
                              const fb_sim_config* config, fb_sweep_mode mode, fb_sweep** out);
FB_API size_t fb_sweep_size(const fb_sweep* sweep);
FB_API fb_status fb_sweep_record_at(const fb_sweep* sweep, size_t index, fb_sweep_record* out);
FB_API void fb_sweep_destroy(fb_sweep* sweep);
/* *found is 0 when the curves never cross. */
FB_API fb_status fb_find_crossover(const double* theta_a, const double* value_a, size_t n_a,
                                   const double* theta_b, const double* value_b, size_t n_b,
                                   int* found, double* out);

/* Figure tables (figures 1 to 5). */
FB_API fb_status fb_reproduce_figure(int figure, const fb_sim_config* config, fb_table** out);
FB_API size_t fb_table_columns(const fb_table* table);
FB_API size_t fb_table_rows(const fb_table* table);
FB_API const char* fb_table_column_name(const fb_table* table, size_t column);
FB_API double fb_table_value(const fb_table* table, size_t row, size_t column);
/* *found is 0 when the table carries no crossover (all figures but 1). */
FB_API void fb_table_crossover(const fb_table* table, int* found, double* theta);
FB_API void fb_table_destroy(fb_table* table);

/* ---- verification suites ---------------------------------------------- */
FB_API fb_status fb_verify_run(int include_monte_carlo, uint64_t monte_carlo_samples,
                               uint64_t seed, fb_report** out);
FB_API size_t fb_report_size(const fb_report* report);
FB_API fb_status fb_report_entry(const fb_report* report, size_t index, const char** id,
                                 const char** description, int* passed, double* observed,
                                 double* tolerance);
FB_API void fb_report_destroy(fb_report* report);

#ifdef __cplusplus
}
#endif

#endif /* FISHERBOUND_H */
