#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "fisherbound/moments.hpp"

namespace fisherbound {

inline constexpr double kDenominatorGuard = 1e-12;
inline constexpr double kDegenerateOptimizerTolerance = 1e-12;
inline constexpr double kSkewZeroTolerance = 1e-10;
inline constexpr double kDerivativeZeroScale = 1e-10;
inline constexpr double kMatchingTolerance = 1e-10;

enum class BoundCase : std::uint8_t {
  General,
  ConstantFirstMoment,
  ConstantSecondMoment,
  Symmetric,
  SimplifyingCharacteristic,
  Degenerate,
};

std::string_view to_string(BoundCase c) noexcept;

/// Coefficients of h(x) = (a + x b)^2 / (1 + 2 x c + x^2 d).
///
///   a = dmu1, b = dmu2 / sqrt(mu2), c = mu3bar, d = mu4bar - 1
///
/// Pearson's inequality reads d >= c^2 in these terms.
struct QuadraticRatioCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  static QuadraticRatioCoeffs from(const MomentPoint& point);
};

struct BoundResult {
  double beta_star = 0.0;
  double s_value = 0.0;
  BoundCase bound_case = BoundCase::General;
  // 1 + 2 beta* c + beta*^2 d; +inf when the optimum is only reached as beta -> +-inf.
  double denominator_at_beta_star = 1.0;
};

/// Evaluates h(beta). Throws DegenerateDirection when the denominator is
/// at or below kDenominatorGuard.
double quadratic_ratio(double beta, const QuadraticRatioCoeffs& coeffs);

/// Maximizer of h over the reals, (ac - b) / (bc - ad).
///
/// When |bc - ad| <= 1e-12 max(|ac|, |b|, 1) no interior stationary point
/// exists; the supremum is then max(a^2, b^2/d). Returns 0 if a^2 is the
/// supremum and +inf if it is only approached as |beta| grows (h tends to
/// b^2/d in both directions). Throws ZeroInformation when a = b = 0.
double optimal_beta(const QuadraticRatioCoeffs& coeffs);

/// The moment-based lower bound S(theta) on Fisher information.
///
/// Outside the simplifying characteristic (b = ac, where beta* = 0 exactly)
/// the value comes from optimal_beta; the case label only records which
/// closed form applies. Label precedence:
/// Degenerate (dmu1 = dmu2 = 0) > SimplifyingCharacteristic >
/// ConstantFirstMoment > ConstantSecondMoment > Symmetric >
/// Degenerate (no interior optimizer) > General.
BoundResult fisher_bound(const MomentPoint& point);

/// Closed-form value of S for one special case, if that case's condition
/// holds at `point` and its formula is well defined.
struct SpecialCaseValue {
  BoundCase bound_case;
  double s_value;
};
std::vector<SpecialCaseValue> special_case_bounds(const MomentPoint& point);

/// The unoptimized (beta = 0) bound dmu1^2 / mu2.
double unoptimized_bound(const MomentPoint& point) noexcept;

/// Cramer-Rao variance limit 1 / (n F) for n independent observations.
double crlb_variance(double fisher, std::int64_t n);

}  // namespace fisherbound
