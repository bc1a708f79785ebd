#include "fisherbound/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include "fisherbound/error.hpp"

namespace fisherbound {
namespace {

constexpr std::uint64_t kCenterSubstream = 0;
constexpr std::uint64_t kPlusSubstream = 1;
constexpr std::uint64_t kMinusSubstream = 2;

// Base variates for the three stencil points theta, theta + h, theta - h.
class StencilInputs {
 public:
  StencilInputs(const ModelSpec& model, const SimConfig& config, std::uint64_t stream)
      : crn_(config.use_common_random_numbers) {
    const StreamKey key{.seed = config.base_seed, .stream = stream, .substream = kCenterSubstream};
    center_ = draw_base_variates(model, config.n_samples, key);
    if (!crn_) {
      plus_ = draw_base_variates(model, config.n_samples, {key.seed, stream, kPlusSubstream});
      minus_ = draw_base_variates(model, config.n_samples, {key.seed, stream, kMinusSubstream});
    }
  }

  std::span<const double> center() const { return center_; }
  std::span<const double> plus() const { return crn_ ? center_ : plus_; }
  std::span<const double> minus() const { return crn_ ? center_ : minus_; }

 private:
  bool crn_;
  std::vector<double> center_;
  std::vector<double> plus_;
  std::vector<double> minus_;
};

CentralMoments moments_at(const ModelSpec& model, double theta, std::span<const double> base,
                          std::vector<double>& scratch) {
  scratch.resize(base.size());
  transform_variates(model, theta, base, scratch);
  return estimate_moments(scratch);
}

MomentDerivatives central_differences(const ModelSpec& model, double theta,
                                      const SimConfig& config, const StencilInputs& inputs,
                                      std::vector<double>& scratch) {
  const double h = config.fd_step;
  const auto up = moments_at(model, theta + h, inputs.plus(), scratch);
  const auto down = moments_at(model, theta - h, inputs.minus(), scratch);
  return {(up.mu1 - down.mu1) / (2.0 * h), (up.mu2 - down.mu2) / (2.0 * h)};
}

std::string at_theta(const char* what, double theta) {
  std::ostringstream msg;
  msg << what << " at theta=" << theta;
  return msg.str();
}

}  // namespace

void SimConfig::validate() const {
  if (n_samples < kMinSimulationSamples) {
    throw Error(ErrorCode::InvalidArgument, "simulation needs at least 1000 samples per point");
  }
  if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
    throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
  }
}

CentralMoments estimate_moments(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorCode::DegenerateDistribution, "no samples");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (!(*lo < *hi)) {
    throw Error(ErrorCode::DegenerateDistribution, "samples hold fewer than two distinct values");
  }
  const double n = static_cast<double>(samples.size());

  // Neumaier-compensated mean.
  double sum = 0.0;
  double carry = 0.0;
  for (double x : samples) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  const double mean = (sum + carry) / n;

  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (double x : samples) {
    const double d = x - mean;
    const double d2 = d * d;
    s1 += d;
    s2 += d2;
    s3 += d2 * d;
    s4 += d2 * d2;
  }
  // s1 carries the residual rounding of the mean; fold it into the variance.
  const double mu2 = (s2 - s1 * s1 / n) / n;
  if (!(mu2 > 0.0)) throw Error(ErrorCode::DegenerateDistribution, "sample variance vanished");
  const auto [mu3bar, mu4bar] = normalize_moments(mean, mu2, s3 / n, s4 / n);
  CentralMoments out{mean, mu2, mu3bar, mu4bar};
  validate_moments(out);
  return out;
}

MomentDerivatives estimate_moment_derivatives(const ModelSpec& model, double theta,
                                              const SimConfig& config) {
  config.validate();
  const StencilInputs inputs(model, config, 0);
  std::vector<double> scratch;
  return central_differences(model, theta, config, inputs, scratch);
}

MomentPoint measure_moment_point(const ModelSpec& model, double theta, const SimConfig& config,
                                 std::uint64_t stream) {
  config.validate();
  const StencilInputs inputs(model, config, stream);
  std::vector<double> scratch;
  const auto center = moments_at(model, theta, inputs.center(), scratch);
  const auto d = central_differences(model, theta, config, inputs, scratch);
  return MomentPoint(theta, center, d.dmu1, d.dmu2);
}

double fisher_oracle_squaring(double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorCode::InvalidArgument, "theta must be finite");
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

  // Density of Z = Y^2, Y ~ N(theta, 1):
  //   p(z) = (2 pi z)^-1/2 exp(-(z + theta^2)/2) cosh(theta sqrt z)
  // written as the half-sum of the two folded Gaussians to avoid overflow.
  const auto density = [&](double z) {
    const double r = std::sqrt(z);
    return 0.5 * inv_sqrt_2pi / r *
           (std::exp(-0.5 * (r - theta) * (r - theta)) + std::exp(-0.5 * (r + theta) * (r + theta)));
  };
  const auto score = [&](double z) {
    const double r = std::sqrt(z);
    return r * std::tanh(theta * r) - theta;
  };
  // z = y^2 removes the integrable z^-1/2 singularity at the origin.
  const auto integrand = [&](double y) {
    if (y <= 0.0) return 0.0;
    const double z = y * y;
    const double s = score(z);
    return s * s * density(z) * 2.0 * y;
  };

  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, std::numeric_limits<double>::infinity(), 20, 1e-13, &error);
  if (!std::isfinite(value) || error > 1e-9 * std::abs(value) + 1e-15) {
    throw Error(ErrorCode::OracleFailure, at_theta("squaring Fisher quadrature did not converge", theta));
  }
  return value;
}

double empirical_fisher_check(const ModelSpec& model, double theta, const SimConfig& config) {
  config.validate();
  if (!has_finite_alphabet(model.kind)) {
    throw Error(ErrorCode::InvalidArgument, "empirical Fisher check needs a finite output alphabet");
  }
  const StencilInputs inputs(model, config, 0);
  const double h = config.fd_step;

  // counts[z] = {at theta, at theta + h, at theta - h}
  std::map<double, std::array<std::size_t, 3>> counts;
  std::vector<double> scratch(config.n_samples);
  const auto tally = [&](double at, std::span<const double> base, std::size_t slot) {
    transform_variates(model, at, base, scratch);
    for (double z : scratch) ++counts[z][slot];
  };
  tally(theta, inputs.center(), 0);
  tally(theta + h, inputs.plus(), 1);
  tally(theta - h, inputs.minus(), 2);

  const double n = static_cast<double>(config.n_samples);
  double fisher = 0.0;
  for (const auto& [z, c] : counts) {
    if (c[0] == 0) {
      throw Error(ErrorCode::InsufficientSamples, at_theta("an output level never occurred", theta));
    }
    const double p = static_cast<double>(c[0]) / n;
    const double dp = (static_cast<double>(c[1]) - static_cast<double>(c[2])) / (n * 2.0 * h);
    fisher += dp * dp / p;
  }
  return fisher;
}

}  // namespace fisherbound
