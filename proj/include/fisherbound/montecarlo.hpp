#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "fisherbound/models.hpp"
#include "fisherbound/moments.hpp"

namespace fisherbound {

inline constexpr std::size_t kMinSimulationSamples = 1000;

struct SimConfig {
  std::size_t n_samples = 1'000'000;
  std::uint64_t base_seed = 42;
  double fd_step = 0.01;
  bool use_common_random_numbers = true;

  /// Throws InvalidArgument unless n_samples >= 1000 and fd_step > 0.
  void validate() const;
};

/// Two-pass sample moments: the mean, then central moments about it with no
/// small-sample correction. Throws DegenerateDistribution unless the sample
/// holds at least two distinct values.
CentralMoments estimate_moments(std::span<const double> samples);

struct MomentDerivatives {
  double dmu1 = 0.0;
  double dmu2 = 0.0;
};

/// Central differences (mu(theta + h) - mu(theta - h)) / 2h of the simulated
/// mean and variance. With common random numbers both sides consume the
/// same base variates.
MomentDerivatives estimate_moment_derivatives(const ModelSpec& model, double theta,
                                              const SimConfig& config);

/// Simulated moments at theta plus their finite-difference derivatives, all
/// drawn from the stream (config.base_seed, stream).
MomentPoint measure_moment_point(const ModelSpec& model, double theta, const SimConfig& config,
                                 std::uint64_t stream = 0);

/// Fisher information of Z = Y^2, Y ~ N(theta, 1), by adaptive quadrature of
/// the squared score against the noncentral chi-square density. Accurate to
/// about 1e-9 relative; throws OracleFailure if the quadrature does not
/// converge.
double fisher_oracle_squaring(double theta);

/// Frequency-based Fisher estimate sum_z (dp/dtheta)^2 / p for models with a
/// finite output alphabet, with dp/dtheta from central differences of
/// outcome frequencies. Throws InsufficientSamples when an outcome seen at
/// theta +- h never occurs at theta.
double empirical_fisher_check(const ModelSpec& model, double theta, const SimConfig& config);

}  // namespace fisherbound
