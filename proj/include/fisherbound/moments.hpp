#pragma once

#include <utility>

namespace fisherbound {

/// Absolute slack allowed on Pearson's inequality before a moment set is
/// considered infeasible. Finite-sample moments only violate it by rounding.
inline constexpr double kFeasibilityTolerance = 1e-9;

/// Mean, variance and the normalized third/fourth central moments of a
/// distribution (no parameter dependence).
struct CentralMoments {
  double mu1 = 0.0;
  double mu2 = 1.0;
  double mu3bar = 0.0;
  double mu4bar = 3.0;
};

/// Everything the information bound needs at one parameter value.
///
/// Construction validates eagerly: mu2 must be positive, all fields finite
/// and (mu3bar, mu4bar) must satisfy Pearson's inequality up to
/// kFeasibilityTolerance. Instances are immutable afterwards.
class MomentPoint {
 public:
  MomentPoint(double theta, const CentralMoments& moments, double dmu1, double dmu2);
  MomentPoint(double theta, double mu1, double mu2, double mu3bar, double mu4bar, double dmu1,
              double dmu2)
      : MomentPoint(theta, CentralMoments{mu1, mu2, mu3bar, mu4bar}, dmu1, dmu2) {}

  double theta() const noexcept { return theta_; }
  double mu1() const noexcept { return moments_.mu1; }
  double mu2() const noexcept { return moments_.mu2; }
  double mu3bar() const noexcept { return moments_.mu3bar; }
  double mu4bar() const noexcept { return moments_.mu4bar; }
  double dmu1() const noexcept { return dmu1_; }
  double dmu2() const noexcept { return dmu2_; }
  const CentralMoments& moments() const noexcept { return moments_; }

 private:
  double theta_;
  CentralMoments moments_;
  double dmu1_;
  double dmu2_;
};

/// Throws Error unless the moments satisfy the MomentPoint invariants.
void validate_moments(const CentralMoments& moments);

/// (mu3 * mu2^-3/2, mu4 * mu2^-2) from central moments.
std::pair<double, double> normalize_moments(double mu1, double mu2, double mu3, double mu4);

/// mu4bar - mu3bar^2 - 1; non-negative for every distribution.
constexpr double pearson_slack(double mu3bar, double mu4bar) noexcept {
  return mu4bar - mu3bar * mu3bar - 1.0;
}

}  // namespace fisherbound
