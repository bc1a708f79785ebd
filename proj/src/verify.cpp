#include "fisherbound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fisherbound/analysis.hpp"
#include "fisherbound/bound.hpp"
#include "fisherbound/models.hpp"
#include "fisherbound/montecarlo.hpp"

namespace fisherbound {
namespace {

double relative_gap(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

// Largest relative |S - F| / F over a grid.
double worst_tightness(const ModelSpec& model, const std::vector<double>& grid) {
  double worst = 0.0;
  for (double theta : grid) {
    const double s = fisher_bound(model_moments(model, theta)).s_value;
    worst = std::max(worst, relative_gap(s, *exact_fisher(model, theta)));
  }
  return worst;
}

CheckResult make(std::string id, std::string description, double observed, double tolerance) {
  return {std::move(id), std::move(description), observed <= tolerance, observed, tolerance};
}

void tightness_checks(std::vector<CheckResult>& out) {
  constexpr double kTol = 1e-9;
  const auto wide = uniform_grid(-2.0, 2.0, 81);
  const auto rates = uniform_grid(0.1, 10.0, 100);
  const auto probabilities = uniform_grid(0.05, 0.95, 91);

  ModelSpec heteroscedastic = ModelSpec::gaussian();
  heteroscedastic.variance_map = ParameterMap::polynomial({1.0, 0.0, 1.0});

  double worst = 0.0;
  worst = std::max(worst, worst_tightness(ModelSpec::gaussian(), wide));
  worst = std::max(worst, worst_tightness(heteroscedastic, wide));
  worst = std::max(worst, worst_tightness(ModelSpec::exponential(), rates));
  worst = std::max(worst, worst_tightness(ModelSpec::bernoulli(), probabilities));
  worst = std::max(worst, worst_tightness(ModelSpec::poisson(), rates));
  worst = std::max(worst, worst_tightness(ModelSpec::hard_limited_gaussian(0.0), wide));
  worst = std::max(worst, worst_tightness(ModelSpec::hard_limited_gaussian(0.5), wide));
  out.push_back(make("tightness", "S = F for Gaussian, exponential, Bernoulli, Poisson, hard-limiter",
                     worst, kTol));
}

void laplace_check(std::vector<CheckResult>& out) {
  const auto model = ModelSpec::laplace_scale();
  double worst = 0.0;
  for (double theta : uniform_grid(0.1, 10.0, 100)) {
    const double s = fisher_bound(model_moments(model, theta)).s_value;
    worst = std::max(worst, relative_gap(s / *exact_fisher(model, theta), 0.8));
  }
  out.push_back(make("laplace-gap", "S / F = 4/5 for the Laplace scale family", worst, 1e-12));
}

void squaring_checks(std::vector<CheckResult>& out) {
  const auto model = ModelSpec::squaring_gaussian();
  const double at_one = fisher_bound(model_moments(model, 1.0)).s_value;
  out.push_back(make("squaring-closed-form", "S(1) = 38/53 for the squaring device",
                     std::abs(at_one - 38.0 / 53.0), 1e-12));
  out.push_back(make("squaring-zero", "S(0) = 0 for the squaring device",
                     std::abs(fisher_bound(model_moments(model, 0.0)).s_value), 0.0));
  double worst = -1.0;
  for (double theta : uniform_grid(0.0, 2.0, 41)) {
    const double s = fisher_bound(model_moments(model, theta)).s_value;
    worst = std::max(worst, s - fisher_oracle_squaring(theta));
  }
  out.push_back(make("squaring-dominance", "S <= F (quadrature) for the squaring device",
                     std::max(worst, 0.0), 1e-6));
}

void crossover_checks(std::vector<CheckResult>& out) {
  const auto table = reproduce_figure(1, SimConfig{});
  const double crossing = table.crossover.value_or(-1.0);
  out.push_back({"crossover", "squaring / hard-limiter loss curves cross in (0.70, 0.80)",
                 crossing > 0.70 && crossing < 0.80, crossing, 0.80});
  const double hard_at_zero = table.rows.front()[2];
  out.push_back(make("hard-limiter-origin", "hard-limiter loss at theta = 0 equals 10 log10(2/pi)",
                     std::abs(hard_at_zero - 10.0 * std::log10(2.0 / std::numbers::pi)), 1e-4));
}

void property_checks(std::vector<CheckResult>& out, const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  double worst_maximality = 0.0;
  double worst_dominance = 0.0;
  for (std::size_t i = 0; i < options.property_instances; ++i) {
    const MomentPoint point = random_realizable_point(rng);
    const auto k = QuadraticRatioCoeffs::from(point);
    const double beta = optimal_beta(k);
    const double best = quadratic_ratio(beta, k);
    for (double delta : {1e-3, 1e-1, 1.0}) {
      for (double sign : {-1.0, 1.0}) {
        const double other = quadratic_ratio(beta + sign * delta, k);
        worst_maximality = std::max(worst_maximality, other - best);
      }
    }
    worst_dominance =
        std::max(worst_dominance, unoptimized_bound(point) - fisher_bound(point).s_value);
  }
  out.push_back(make("beta-maximality", "h(beta*) >= h(beta* +- delta) on random moment sets",
                     worst_maximality, 1e-12));
  out.push_back(make("dominance", "S >= dmu1^2 / mu2 on random moment sets", worst_dominance, 1e-12));
}

void worst_case_check(std::vector<CheckResult>& out) {
  double worst = 0.0;
  for (double variance : {0.5, 1.0, 2.0}) {
    ModelSpec gaussian = ModelSpec::gaussian();
    gaussian.variance_map = ParameterMap::constant(variance);
    const double f_gauss = *exact_fisher(gaussian, 0.0);
    const double f_laplace = 2.0 / variance;  // Laplace location family, scale sqrt(v/2)
    worst = std::max(worst, f_gauss - f_laplace);
  }
  out.push_back(make("worst-case-gaussian",
                     "Gaussian Fisher <= Laplace Fisher at matched mean and variance",
                     std::max(worst, 0.0), 0.0));
}

void pearson_check(std::vector<CheckResult>& out, double worst_from_simulation) {
  double worst = worst_from_simulation;
  const ModelSpec models[] = {ModelSpec::gaussian(),          ModelSpec::exponential(),
                              ModelSpec::laplace_scale(),     ModelSpec::bernoulli(),
                              ModelSpec::poisson(),           ModelSpec::hard_limited_gaussian(0.0),
                              ModelSpec::squaring_gaussian(), ModelSpec::soft_limiter_gaussian(0.5)};
  std::uint64_t seed = 1;
  for (const auto& model : models) {
    for (double theta : {0.2, 0.5, 0.8}) {
      const auto m = estimate_moments(sample(model, theta, 10'000, seed++));
      worst = std::min(worst, pearson_slack(m.mu3bar, m.mu4bar));
    }
  }
  out.push_back(make("pearson", "empirical moments satisfy mu4bar >= mu3bar^2 + 1",
                     std::max(0.0, -worst), kFeasibilityTolerance));
}

double monte_carlo_checks(std::vector<CheckResult>& out, const VerifyOptions& options) {
  SimConfig config;
  config.n_samples = options.monte_carlo_samples;
  config.base_seed = options.seed;
  double min_slack = 0.0;

  const auto grid = uniform_grid(0.0, 1.0, 21);
  const auto hard = sweep(ModelSpec::hard_limited_gaussian(0.0), grid, config, SweepMode::Analytic);
  std::vector<std::vector<SweepRecord>> curves;
  for (double zeta : {1.0, 0.5, 0.1}) {
    curves.push_back(sweep(ModelSpec::soft_limiter_gaussian(zeta), grid, config,
                           SweepMode::MonteCarlo, [](double) { return 1.0; }));
    for (const auto& r : curves.back()) {
      min_slack = std::min(min_slack, pearson_slack(r.moments.mu3bar(), r.moments.mu4bar()));
    }
  }
  double gap = 0.0;
  double ordering = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    gap = std::max(gap, std::abs(curves[2][i].loss_db - hard[i].loss_db));
    ordering = std::max(ordering, curves[1][i].loss_db - curves[0][i].loss_db);
    ordering = std::max(ordering, curves[2][i].loss_db - curves[1][i].loss_db);
  }
  out.push_back(make("soft-limiter-limit", "zeta = 0.1 loss within 0.2 dB of the hard limiter",
                     gap, 0.2));
  out.push_back(make("soft-limiter-ordering", "loss curves ordered in zeta (1.0, 0.5, 0.1)",
                     std::max(0.0, ordering), 0.1));

  double worst = 0.0;
  const auto model = ModelSpec::hard_limited_gaussian(0.0);
  for (double theta : {0.0, 0.5, 1.0}) {
    const double estimate = empirical_fisher_check(model, theta, config);
    worst = std::max(worst, relative_gap(estimate, *exact_fisher(model, theta)));
  }
  out.push_back(make("empirical-fisher", "frequency-based hard-limiter Fisher within 5%", worst, 0.05));
  return min_slack;
}

}  // namespace

MomentPoint random_realizable_point(std::mt19937_64& rng, int support) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> p(support), x(support), dp(support), dx(support);
  const double scale = std::exp(2.0 * unit(rng));
  double total = 0.0;
  for (int k = 0; k < support; ++k) {
    p[k] = std::exp(2.0 * unit(rng));
    x[k] = scale * unit(rng);
    dx[k] = unit(rng);
    total += p[k];
  }
  double g_mean = 0.0;
  std::vector<double> g(support);
  for (int k = 0; k < support; ++k) {
    p[k] /= total;
    g[k] = unit(rng);
    g_mean += p[k] * g[k];
  }
  // Score-like tangent keeps the probabilities summing to one.
  for (int k = 0; k < support; ++k) dp[k] = p[k] * (g[k] - g_mean);

  double mu1 = 0.0, dmu1 = 0.0;
  for (int k = 0; k < support; ++k) {
    mu1 += p[k] * x[k];
    dmu1 += dp[k] * x[k] + p[k] * dx[k];
  }
  double mu2 = 0.0, mu3 = 0.0, mu4 = 0.0, dmu2 = 0.0;
  for (int k = 0; k < support; ++k) {
    const double d = x[k] - mu1;
    mu2 += p[k] * d * d;
    mu3 += p[k] * d * d * d;
    mu4 += p[k] * d * d * d * d;
    dmu2 += dp[k] * d * d + 2.0 * p[k] * d * dx[k];
  }
  const auto [mu3bar, mu4bar] = normalize_moments(mu1, mu2, mu3, mu4);
  return MomentPoint(0.0, mu1, mu2, mu3bar, mu4bar, dmu1, dmu2);
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  tightness_checks(out);
  laplace_check(out);
  squaring_checks(out);
  crossover_checks(out);
  property_checks(out, options);
  worst_case_check(out);
  double min_slack = 0.0;
  if (options.include_monte_carlo) min_slack = monte_carlo_checks(out, options);
  pearson_check(out, min_slack);
  return out;
}

}  // namespace fisherbound
