#include "fisherbound/moments.hpp"

#include <cmath>
#include <sstream>

#include "fisherbound/error.hpp"

namespace fisherbound {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DegenerateDistribution: return "degenerate distribution";
    case ErrorCode::InfeasibleMoments: return "infeasible moments";
    case ErrorCode::DegenerateDirection: return "degenerate direction";
    case ErrorCode::ZeroInformation: return "zero information";
    case ErrorCode::InvalidInformation: return "invalid information";
    case ErrorCode::ParameterDomain: return "parameter domain";
    case ErrorCode::UnsupportedAnalytic: return "unsupported analytic";
    case ErrorCode::InsufficientSamples: return "insufficient samples";
    case ErrorCode::GridMismatch: return "grid mismatch";
    case ErrorCode::OracleFailure: return "oracle failure";
  }
  return "unknown";
}

void validate_moments(const CentralMoments& m) {
  if (!std::isfinite(m.mu1) || !std::isfinite(m.mu2) || !std::isfinite(m.mu3bar) ||
      !std::isfinite(m.mu4bar)) {
    throw Error(ErrorCode::InvalidArgument, "moments must be finite");
  }
  if (!(m.mu2 > 0.0)) {
    throw Error(ErrorCode::DegenerateDistribution, "second central moment must be positive");
  }
  const double slack = pearson_slack(m.mu3bar, m.mu4bar);
  if (slack < -kFeasibilityTolerance) {
    std::ostringstream msg;
    msg << "moments violate Pearson's inequality (slack " << slack << ")";
    throw Error(ErrorCode::InfeasibleMoments, msg.str());
  }
}

MomentPoint::MomentPoint(double theta, const CentralMoments& moments, double dmu1, double dmu2)
    : theta_(theta), moments_(moments), dmu1_(dmu1), dmu2_(dmu2) {
  if (!std::isfinite(theta) || !std::isfinite(dmu1) || !std::isfinite(dmu2)) {
    throw Error(ErrorCode::InvalidArgument, "parameter and moment derivatives must be finite");
  }
  validate_moments(moments_);
}

std::pair<double, double> normalize_moments(double /*mu1*/, double mu2, double mu3, double mu4) {
  if (!(mu2 > 0.0)) {
    throw Error(ErrorCode::DegenerateDistribution, "second central moment must be positive");
  }
  if (mu4 < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "fourth central moment must be non-negative");
  }
  return {mu3 / (mu2 * std::sqrt(mu2)), mu4 / (mu2 * mu2)};
}

}  // namespace fisherbound
