#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fisherbound/verify.hpp"

using namespace fisherbound;

TEST(Verify, AnalyticSuitesPass) {
  const auto checks = run_verification();
  std::set<std::string> ids;
  for (const auto& c : checks) {
    ids.insert(c.id);
    EXPECT_TRUE(c.passed) << c.id << " observed " << c.observed;
  }
  for (const char* id : {"tightness", "laplace-gap", "squaring-closed-form", "squaring-zero",
                         "squaring-dominance", "crossover", "hard-limiter-origin",
                         "beta-maximality", "dominance", "worst-case-gaussian", "pearson"}) {
    EXPECT_TRUE(ids.count(id)) << id;
  }
}

TEST(Verify, MonteCarloChecksAreReported) {
  VerifyOptions options;
  options.include_monte_carlo = true;
  options.monte_carlo_samples = 20'000;
  options.property_instances = 100;
  std::set<std::string> ids;
  for (const auto& c : run_verification(options)) ids.insert(c.id);
  EXPECT_TRUE(ids.count("soft-limiter-limit"));
  EXPECT_TRUE(ids.count("soft-limiter-ordering"));
  EXPECT_TRUE(ids.count("empirical-fisher"));
}

TEST(Verify, RandomPointsAreFeasible) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_realizable_point(rng);
    EXPECT_GE(pearson_slack(p.mu3bar(), p.mu4bar()), -kFeasibilityTolerance);
    EXPECT_GT(p.mu2(), 0.0);
  }
}
