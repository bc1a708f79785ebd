#include "fisherbound/fisherbound.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "fisherbound/analysis.hpp"
#include "fisherbound/bound.hpp"
#include "fisherbound/error.hpp"
#include "fisherbound/models.hpp"
#include "fisherbound/montecarlo.hpp"
#include "fisherbound/verify.hpp"

namespace fb = fisherbound;

struct fb_model {
  fb::ModelSpec spec;
};

struct fb_sweep {
  std::vector<fb::SweepRecord> records;
};

struct fb_table {
  fb::FigureTable table;
};

struct fb_report {
  std::vector<fb::CheckResult> checks;
};

namespace {

thread_local std::string last_error;

fb_status to_status(fb::ErrorCode code) {
  switch (code) {
    case fb::ErrorCode::InvalidArgument: return FB_ERR_INVALID_ARGUMENT;
    case fb::ErrorCode::DegenerateDistribution: return FB_ERR_DEGENERATE_DISTRIBUTION;
    case fb::ErrorCode::InfeasibleMoments: return FB_ERR_INFEASIBLE_MOMENTS;
    case fb::ErrorCode::DegenerateDirection: return FB_ERR_DEGENERATE_DIRECTION;
    case fb::ErrorCode::ZeroInformation: return FB_ERR_ZERO_INFORMATION;
    case fb::ErrorCode::InvalidInformation: return FB_ERR_INVALID_INFORMATION;
    case fb::ErrorCode::ParameterDomain: return FB_ERR_PARAMETER_DOMAIN;
    case fb::ErrorCode::UnsupportedAnalytic: return FB_ERR_UNSUPPORTED_ANALYTIC;
    case fb::ErrorCode::InsufficientSamples: return FB_ERR_INSUFFICIENT_SAMPLES;
    case fb::ErrorCode::GridMismatch: return FB_ERR_GRID_MISMATCH;
    case fb::ErrorCode::OracleFailure: return FB_ERR_ORACLE;
  }
  return FB_ERR_INTERNAL;
}

template <typename Body>
fb_status guarded(Body&& body) noexcept {
  last_error.clear();
  try {
    body();
    return FB_OK;
  } catch (const fb::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FB_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return FB_ERR_INTERNAL;
  }
}

template <typename... Ptrs>
void require(const Ptrs*... ptrs) {
  if (((ptrs == nullptr) || ...)) {
    throw fb::Error(fb::ErrorCode::InvalidArgument, "null pointer argument");
  }
}

fb_case to_c(fb::BoundCase c) { return static_cast<fb_case>(c); }

fb_moment_point to_c(const fb::MomentPoint& p) {
  return {p.theta(), p.mu1(), p.mu2(), p.mu3bar(), p.mu4bar(), p.dmu1(), p.dmu2()};
}

fb::MomentPoint from_c(const fb_moment_point& p) {
  return fb::MomentPoint(p.theta, p.mu1, p.mu2, p.mu3bar, p.mu4bar, p.dmu1, p.dmu2);
}

fb::SimConfig from_c(const fb_sim_config* c) {
  if (c == nullptr) return fb::SimConfig{};
  fb::SimConfig config;
  config.n_samples = static_cast<std::size_t>(c->n_samples);
  config.base_seed = c->base_seed;
  config.fd_step = c->fd_step;
  config.use_common_random_numbers = c->use_common_random_numbers != 0;
  return config;
}

fb::ParameterMap callback_map(fb_map_fn value, fb_map_fn derivative, void* user) {
  if (value == nullptr || derivative == nullptr) {
    throw fb::Error(fb::ErrorCode::InvalidArgument, "map callbacks must not be null");
  }
  return {[value, user](double t) { return value(t, user); },
          [derivative, user](double t) { return derivative(t, user); }};
}

constexpr const char* kKindNames[] = {"gaussian", "exponential",  "laplace-scale", "bernoulli",
                                      "poisson",  "hard-limiter", "squaring",      "soft-limiter"};

}  // namespace

extern "C" {

const char* fb_version(void) { return "1.0.0"; }

const char* fb_last_error(void) { return last_error.c_str(); }

const char* fb_status_name(fb_status status) {
  switch (status) {
    case FB_OK: return "ok";
    case FB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FB_ERR_DEGENERATE_DISTRIBUTION: return "degenerate distribution";
    case FB_ERR_INFEASIBLE_MOMENTS: return "infeasible moments";
    case FB_ERR_DEGENERATE_DIRECTION: return "degenerate direction";
    case FB_ERR_ZERO_INFORMATION: return "zero information";
    case FB_ERR_INVALID_INFORMATION: return "invalid information";
    case FB_ERR_PARAMETER_DOMAIN: return "parameter domain";
    case FB_ERR_UNSUPPORTED_ANALYTIC: return "unsupported analytic";
    case FB_ERR_INSUFFICIENT_SAMPLES: return "insufficient samples";
    case FB_ERR_GRID_MISMATCH: return "grid mismatch";
    case FB_ERR_ORACLE: return "oracle failure";
    case FB_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* fb_case_name(fb_case bound_case) {
  if (bound_case < FB_CASE_GENERAL || bound_case > FB_CASE_DEGENERATE) return "unknown";
  return fb::to_string(static_cast<fb::BoundCase>(bound_case)).data();
}

const char* fb_model_kind_name(fb_model_kind kind) {
  if (kind < FB_MODEL_GAUSSIAN || kind > FB_MODEL_SOFT_LIMITER) return "unknown";
  return kKindNames[kind];
}

fb_status fb_model_kind_from_name(const char* name, fb_model_kind* out) {
  return guarded([&] {
    require(name, out);
    for (int k = FB_MODEL_GAUSSIAN; k <= FB_MODEL_SOFT_LIMITER; ++k) {
      if (std::strcmp(name, kKindNames[k]) == 0) {
        *out = static_cast<fb_model_kind>(k);
        return;
      }
    }
    throw fb::Error(fb::ErrorCode::InvalidArgument, std::string("unknown model '") + name + "'");
  });
}

fb_sim_config fb_sim_config_default(void) {
  const fb::SimConfig d;
  return {d.n_samples, d.base_seed, d.fd_step, d.use_common_random_numbers ? 1 : 0};
}

fb_status fb_normalize_moments(double mu1, double mu2, double mu3, double mu4, double* mu3bar,
                               double* mu4bar) {
  return guarded([&] {
    require(mu3bar, mu4bar);
    std::tie(*mu3bar, *mu4bar) = fb::normalize_moments(mu1, mu2, mu3, mu4);
  });
}

double fb_pearson_slack(double mu3bar, double mu4bar) { return fb::pearson_slack(mu3bar, mu4bar); }

fb_status fb_validate_moment_point(const fb_moment_point* point) {
  return guarded([&] {
    require(point);
    (void)from_c(*point);
  });
}

fb_status fb_quadratic_ratio(double beta, double a, double b, double c, double d, double* out) {
  return guarded([&] {
    require(out);
    *out = fb::quadratic_ratio(beta, {a, b, c, d});
  });
}

fb_status fb_optimal_beta(double a, double b, double c, double d, double* out) {
  return guarded([&] {
    require(out);
    *out = fb::optimal_beta({a, b, c, d});
  });
}

fb_status fb_fisher_bound(const fb_moment_point* point, fb_bound_result* out) {
  return guarded([&] {
    require(point, out);
    const auto r = fb::fisher_bound(from_c(*point));
    *out = {r.beta_star, r.s_value, r.denominator_at_beta_star, to_c(r.bound_case)};
  });
}

fb_status fb_crlb_variance(double fisher, int64_t n, double* out) {
  return guarded([&] {
    require(out);
    *out = fb::crlb_variance(fisher, n);
  });
}

fb_status fb_model_create(fb_model_kind kind, double gamma, double zeta, fb_model** out) {
  return guarded([&] {
    require(out);
    *out = nullptr;
    if (kind < FB_MODEL_GAUSSIAN || kind > FB_MODEL_SOFT_LIMITER) {
      throw fb::Error(fb::ErrorCode::InvalidArgument, "unknown model kind");
    }
    fb::ModelSpec spec;
    spec.kind = static_cast<fb::ModelKind>(kind);
    spec.gamma = gamma;
    spec.zeta = zeta;
    spec.validate();
    *out = new fb_model{std::move(spec)};
  });
}

void fb_model_destroy(fb_model* model) { delete model; }

fb_status fb_model_set_mean_map(fb_model* model, fb_map_fn value, fb_map_fn derivative,
                                void* user_data) {
  return guarded([&] {
    require(model);
    model->spec.mean_map = callback_map(value, derivative, user_data);
  });
}

fb_status fb_model_set_variance_map(fb_model* model, fb_map_fn value, fb_map_fn derivative,
                                    void* user_data) {
  return guarded([&] {
    require(model);
    model->spec.variance_map = callback_map(value, derivative, user_data);
  });
}

fb_status fb_model_set_mean_polynomial(fb_model* model, const double* coeffs, size_t n) {
  return guarded([&] {
    require(model, coeffs);
    model->spec.mean_map = fb::ParameterMap::polynomial({coeffs, coeffs + n});
  });
}

fb_status fb_model_set_variance_polynomial(fb_model* model, const double* coeffs, size_t n) {
  return guarded([&] {
    require(model, coeffs);
    model->spec.variance_map = fb::ParameterMap::polynomial({coeffs, coeffs + n});
  });
}

fb_status fb_model_moments(const fb_model* model, double theta, fb_moment_point* out) {
  return guarded([&] {
    require(model, out);
    *out = to_c(fb::model_moments(model->spec, theta));
  });
}

fb_status fb_model_exact_fisher(const fb_model* model, double theta, int* has_value,
                                double* out) {
  return guarded([&] {
    require(model, has_value, out);
    const auto f = fb::exact_fisher(model->spec, theta);
    *has_value = f.has_value() ? 1 : 0;
    *out = f.value_or(0.0);
  });
}

fb_status fb_model_input_fisher(const fb_model* model, double theta, double* out) {
  return guarded([&] {
    require(model, out);
    *out = fb::input_fisher(model->spec, theta);
  });
}

fb_status fb_model_apply_nonlinearity(const fb_model* model, double y, double* out) {
  return guarded([&] {
    require(model, out);
    *out = fb::apply_nonlinearity(model->spec, y);
  });
}

fb_status fb_model_sample(const fb_model* model, double theta, size_t n, uint64_t seed,
                          double* out) {
  return guarded([&] {
    require(model, out);
    const auto values = fb::sample(model->spec, theta, n, seed);
    std::memcpy(out, values.data(), n * sizeof(double));
  });
}

fb_status fb_estimate_moments(const double* samples, size_t n, fb_central_moments* out) {
  return guarded([&] {
    require(samples, out);
    const auto m = fb::estimate_moments({samples, n});
    *out = {m.mu1, m.mu2, m.mu3bar, m.mu4bar};
  });
}

fb_status fb_estimate_moment_derivatives(const fb_model* model, double theta,
                                         const fb_sim_config* config, double* dmu1,
                                         double* dmu2) {
  return guarded([&] {
    require(model, dmu1, dmu2);
    const auto d = fb::estimate_moment_derivatives(model->spec, theta, from_c(config));
    *dmu1 = d.dmu1;
    *dmu2 = d.dmu2;
  });
}

fb_status fb_measure_moment_point(const fb_model* model, double theta,
                                  const fb_sim_config* config, fb_moment_point* out) {
  return guarded([&] {
    require(model, out);
    *out = to_c(fb::measure_moment_point(model->spec, theta, from_c(config)));
  });
}

fb_status fb_fisher_oracle_squaring(double theta, double* out) {
  return guarded([&] {
    require(out);
    *out = fb::fisher_oracle_squaring(theta);
  });
}

fb_status fb_empirical_fisher_check(const fb_model* model, double theta,
                                    const fb_sim_config* config, double* out) {
  return guarded([&] {
    require(model, out);
    *out = fb::empirical_fisher_check(model->spec, theta, from_c(config));
  });
}

fb_status fb_information_loss(double s_z, double f_y, double* ratio, double* db) {
  return guarded([&] {
    require(ratio, db);
    const auto loss = fb::information_loss(s_z, f_y);
    *ratio = loss.ratio;
    *db = loss.db;
  });
}

fb_status fb_sweep_run(const fb_model* model, const double* grid, size_t n,
                       const fb_sim_config* config, fb_sweep_mode mode, fb_sweep** out) {
  return guarded([&] {
    require(model, grid, out);
    *out = nullptr;
    const auto sweep_mode =
        mode == FB_SWEEP_MONTE_CARLO ? fb::SweepMode::MonteCarlo : fb::SweepMode::Analytic;
    auto records = fb::sweep(model->spec, {grid, n}, from_c(config), sweep_mode);
    *out = new fb_sweep{std::move(records)};
  });
}

size_t fb_sweep_size(const fb_sweep* sweep) { return sweep ? sweep->records.size() : 0; }

fb_status fb_sweep_record_at(const fb_sweep* sweep, size_t index, fb_sweep_record* out) {
  return guarded([&] {
    require(sweep, out);
    if (index >= sweep->records.size()) {
      throw fb::Error(fb::ErrorCode::InvalidArgument, "record index out of range");
    }
    const auto& r = sweep->records[index];
    *out = {to_c(r.moments),          r.beta_star, r.s_value, r.f_exact ? 1 : 0,
            r.f_exact.value_or(0.0),  r.f_input,   r.loss_db, to_c(r.bound_case)};
  });
}

void fb_sweep_destroy(fb_sweep* sweep) { delete sweep; }

fb_status fb_find_crossover(const double* theta_a, const double* value_a, size_t n_a,
                            const double* theta_b, const double* value_b, size_t n_b, int* found,
                            double* out) {
  return guarded([&] {
    require(theta_a, value_a, theta_b, value_b, found, out);
    std::vector<fb::CurvePoint> a(n_a), b(n_b);
    for (size_t i = 0; i < n_a; ++i) a[i] = {theta_a[i], value_a[i]};
    for (size_t i = 0; i < n_b; ++i) b[i] = {theta_b[i], value_b[i]};
    const auto crossing = fb::find_crossover(a, b);
    *found = crossing ? 1 : 0;
    *out = crossing.value_or(0.0);
  });
}

fb_status fb_reproduce_figure(int figure, const fb_sim_config* config, fb_table** out) {
  return guarded([&] {
    require(out);
    *out = nullptr;
    auto table = fb::reproduce_figure(figure, from_c(config));
    *out = new fb_table{std::move(table)};
  });
}

size_t fb_table_columns(const fb_table* table) { return table ? table->table.columns.size() : 0; }

size_t fb_table_rows(const fb_table* table) { return table ? table->table.rows.size() : 0; }

const char* fb_table_column_name(const fb_table* table, size_t column) {
  if (table == nullptr || column >= table->table.columns.size()) return nullptr;
  return table->table.columns[column].c_str();
}

double fb_table_value(const fb_table* table, size_t row, size_t column) {
  if (table == nullptr || row >= table->table.rows.size() ||
      column >= table->table.rows[row].size()) {
    return 0.0;
  }
  return table->table.rows[row][column];
}

void fb_table_crossover(const fb_table* table, int* found, double* theta) {
  const bool has = table != nullptr && table->table.crossover.has_value();
  if (found) *found = has ? 1 : 0;
  if (theta) *theta = has ? *table->table.crossover : 0.0;
}

void fb_table_destroy(fb_table* table) { delete table; }

fb_status fb_verify_run(int include_monte_carlo, uint64_t monte_carlo_samples, uint64_t seed,
                        fb_report** out) {
  return guarded([&] {
    require(out);
    *out = nullptr;
    fb::VerifyOptions options;
    options.include_monte_carlo = include_monte_carlo != 0;
    if (monte_carlo_samples > 0) options.monte_carlo_samples = monte_carlo_samples;
    options.seed = seed;
    *out = new fb_report{fb::run_verification(options)};
  });
}

size_t fb_report_size(const fb_report* report) { return report ? report->checks.size() : 0; }

fb_status fb_report_entry(const fb_report* report, size_t index, const char** id,
                          const char** description, int* passed, double* observed,
                          double* tolerance) {
  return guarded([&] {
    require(report);
    if (index >= report->checks.size()) {
      throw fb::Error(fb::ErrorCode::InvalidArgument, "report index out of range");
    }
    const auto& c = report->checks[index];
    if (id) *id = c.id.c_str();
    if (description) *description = c.description.c_str();
    if (passed) *passed = c.passed ? 1 : 0;
    if (observed) *observed = c.observed;
    if (tolerance) *tolerance = c.tolerance;
  });
}

void fb_report_destroy(fb_report* report) { delete report; }

}  // extern "C"
