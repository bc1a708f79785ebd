#include "fisherbound/bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "fisherbound/error.hpp"

namespace fisherbound {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double derivative_zero_tolerance(const MomentPoint& p) {
  return kDerivativeZeroScale * (1.0 + std::abs(p.dmu1()) + std::abs(p.dmu2()));
}

bool has_simplifying_characteristic(const MomentPoint& p) {
  const double lhs = p.dmu1() * std::sqrt(p.mu2()) * p.mu3bar();
  const double rhs = p.dmu2();
  return std::abs(lhs - rhs) <= kMatchingTolerance * (std::abs(lhs) + std::abs(rhs));
}

// Supremum of h when there is no interior stationary point, together with
// the beta that realizes it (0 or the limit +inf).
std::pair<double, double> boundary_supremum(const QuadraticRatioCoeffs& k) {
  const double at_zero = k.a * k.a;
  const double at_infinity = k.d > 0.0 ? k.b * k.b / k.d : (k.b == 0.0 ? 0.0 : kInf);
  // Two-point distributions give at_infinity == at_zero analytically; keep
  // beta = 0 unless the limit is genuinely larger.
  if (at_infinity > at_zero * (1.0 + 1e-12)) return {kInf, at_infinity};
  return {0.0, at_zero};
}

bool optimizer_is_degenerate(const QuadraticRatioCoeffs& k) {
  const double denominator = k.b * k.c - k.a * k.d;
  const double scale = std::max({std::abs(k.a * k.c), std::abs(k.b), 1.0});
  return std::abs(denominator) <= kDegenerateOptimizerTolerance * scale;
}

}  // namespace

std::string_view to_string(BoundCase c) noexcept {
  switch (c) {
    case BoundCase::General: return "general";
    case BoundCase::ConstantFirstMoment: return "constant-first-moment";
    case BoundCase::ConstantSecondMoment: return "constant-second-moment";
    case BoundCase::Symmetric: return "symmetric";
    case BoundCase::SimplifyingCharacteristic: return "simplifying-characteristic";
    case BoundCase::Degenerate: return "degenerate";
  }
  return "unknown";
}

QuadraticRatioCoeffs QuadraticRatioCoeffs::from(const MomentPoint& p) {
  return {p.dmu1(), p.dmu2() / std::sqrt(p.mu2()), p.mu3bar(), p.mu4bar() - 1.0};
}

double quadratic_ratio(double beta, const QuadraticRatioCoeffs& k) {
  const double denominator = 1.0 + 2.0 * beta * k.c + beta * beta * k.d;
  if (!(denominator > kDenominatorGuard)) {
    throw Error(ErrorCode::DegenerateDirection,
                "quadratic ratio denominator vanishes for this mixing weight");
  }
  const double numerator = k.a + beta * k.b;
  return numerator * numerator / denominator;
}

double optimal_beta(const QuadraticRatioCoeffs& k) {
  if (k.a == 0.0 && k.b == 0.0) {
    throw Error(ErrorCode::ZeroInformation, "both moment derivatives vanish");
  }
  if (optimizer_is_degenerate(k)) return boundary_supremum(k).first;
  return (k.a * k.c - k.b) / (k.b * k.c - k.a * k.d);
}

BoundResult fisher_bound(const MomentPoint& p) {
  BoundResult result;
  const double zero_tol = derivative_zero_tolerance(p);
  const bool first_constant = std::abs(p.dmu1()) <= zero_tol;
  const bool second_constant = std::abs(p.dmu2()) <= zero_tol;

  if (first_constant && second_constant) {
    // Not identifiable through the first two moments.
    result.bound_case = BoundCase::Degenerate;
    return result;
  }

  const auto k = QuadraticRatioCoeffs::from(p);
  const bool simplifying = has_simplifying_characteristic(p);
  bool fell_back = false;
  if (simplifying) {
    // b = ac: h(beta) <= a^2 (1 + beta c)^2 / (1 + beta c)^2 by Pearson, so
    // beta* = 0. Two-point laws reach this with d ~ c^2 lost to rounding.
    result.beta_star = 0.0;
    result.s_value = k.a * k.a;
  } else if (optimizer_is_degenerate(k)) {
    fell_back = true;
    std::tie(result.beta_star, result.s_value) = boundary_supremum(k);
    result.denominator_at_beta_star = std::isinf(result.beta_star) ? kInf : 1.0;
  } else {
    result.beta_star = (k.a * k.c - k.b) / (k.b * k.c - k.a * k.d);
    result.denominator_at_beta_star =
        1.0 + 2.0 * result.beta_star * k.c + result.beta_star * result.beta_star * k.d;
    if (result.denominator_at_beta_star > kDenominatorGuard) {
      result.s_value = quadratic_ratio(result.beta_star, k);
    } else {
      // Pearson equality with a moving support: the stationary point sits on
      // the excluded direction. Report the boundary supremum instead.
      fell_back = true;
      std::tie(result.beta_star, result.s_value) = boundary_supremum(k);
      result.denominator_at_beta_star = std::isinf(result.beta_star) ? kInf : 1.0;
    }
  }
  result.s_value = std::max(0.0, result.s_value / p.mu2());

  if (simplifying) {
    result.bound_case = BoundCase::SimplifyingCharacteristic;
  } else if (first_constant) {
    result.bound_case = BoundCase::ConstantFirstMoment;
  } else if (second_constant) {
    result.bound_case = BoundCase::ConstantSecondMoment;
  } else if (std::abs(p.mu3bar()) <= kSkewZeroTolerance) {
    result.bound_case = BoundCase::Symmetric;
  } else if (fell_back) {
    result.bound_case = BoundCase::Degenerate;
  } else {
    result.bound_case = BoundCase::General;
  }
  return result;
}

std::vector<SpecialCaseValue> special_case_bounds(const MomentPoint& p) {
  std::vector<SpecialCaseValue> out;
  const double zero_tol = derivative_zero_tolerance(p);
  const double mu2 = p.mu2();
  const double c = p.mu3bar();
  const double d = p.mu4bar() - 1.0;
  const double slack = pearson_slack(c, p.mu4bar());

  if (has_simplifying_characteristic(p)) {
    out.push_back({BoundCase::SimplifyingCharacteristic, p.dmu1() * p.dmu1() / mu2});
  }
  if (std::abs(p.dmu1()) <= zero_tol && slack > kDenominatorGuard) {
    out.push_back({BoundCase::ConstantFirstMoment, p.dmu2() * p.dmu2() / (mu2 * mu2 * slack)});
  }
  if (std::abs(p.dmu2()) <= zero_tol && d > 0.0) {
    const double shrink = 1.0 - c * c / d;
    if (shrink > kDenominatorGuard) {
      out.push_back({BoundCase::ConstantSecondMoment, p.dmu1() * p.dmu1() / (mu2 * shrink)});
    }
  }
  if (std::abs(c) <= kSkewZeroTolerance && d > 0.0) {
    out.push_back({BoundCase::Symmetric,
                   p.dmu1() * p.dmu1() / mu2 + p.dmu2() * p.dmu2() / (mu2 * mu2 * d)});
  }
  return out;
}

double unoptimized_bound(const MomentPoint& p) noexcept { return p.dmu1() * p.dmu1() / p.mu2(); }

double crlb_variance(double fisher, std::int64_t n) {
  if (!(fisher > 0.0) || !std::isfinite(fisher)) {
    throw Error(ErrorCode::InvalidInformation, "Fisher information must be positive and finite");
  }
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be at least 1");
  return 1.0 / (static_cast<double>(n) * fisher);
}

}  // namespace fisherbound
