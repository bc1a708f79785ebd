#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fisherbound/moments.hpp"

namespace fisherbound {

struct CheckResult {
  std::string id;
  std::string description;
  bool passed = false;
  double observed = 0.0;   // worst value of the checked statistic
  double tolerance = 0.0;  // threshold it is compared against
};

struct VerifyOptions {
  bool include_monte_carlo = false;
  std::size_t monte_carlo_samples = 10'000'000;
  std::size_t property_instances = 10'000;
  std::uint64_t seed = 42;
};

/// Runs the tightness, dominance and closed-form suites (and, on request, the
/// simulated soft-limiter and empirical Fisher checks).
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

/// A moment point realized by a random discrete distribution on `support`
/// points together with a random tangent direction (perturbation of both the
/// probabilities and the atoms), so the derivatives are those of an actual
/// one-parameter family.
MomentPoint random_realizable_point(std::mt19937_64& rng, int support = 5);

}  // namespace fisherbound
