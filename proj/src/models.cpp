#include "fisherbound/models.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "fisherbound/error.hpp"

namespace fisherbound {
namespace {

using std::numbers::pi;

[[noreturn]] void domain_error(const ModelSpec& model, double theta, const char* what) {
  std::ostringstream msg;
  msg << to_string(model.kind) << " at theta=" << theta << ": " << what;
  throw Error(ErrorCode::ParameterDomain, msg.str());
}

struct MapValue {
  double value;
  double derivative;
};

MapValue evaluate(const ParameterMap& map, double theta) {
  return {map.value(theta), map.derivative(theta)};
}

double standard_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi); }

// Parameters of the Gaussian input N(nu1, nu2) at theta.
struct GaussianInput {
  MapValue mean;
  MapValue variance;
};

GaussianInput gaussian_input(const ModelSpec& model, double theta) {
  GaussianInput in{evaluate(model.mean_map, theta), evaluate(model.variance_map, theta)};
  if (!(in.variance.value > 0.0) || !std::isfinite(in.variance.value)) {
    domain_error(model, theta, "input variance must be positive");
  }
  return in;
}

double single_parameter(const ModelSpec& model, double theta, MapValue* out) {
  *out = evaluate(model.mean_map, theta);
  const double nu = out->value;
  switch (model.kind) {
    case ModelKind::Bernoulli:
      if (!(nu > 0.0 && nu < 1.0)) domain_error(model, theta, "probability must lie in (0, 1)");
      break;
    case ModelKind::Exponential:
    case ModelKind::LaplaceScale:
    case ModelKind::Poisson:
      if (!(nu > 0.0) || !std::isfinite(nu)) domain_error(model, theta, "parameter must be positive");
      break;
    default:
      break;
  }
  return nu;
}

// Output probabilities of the hard limiter and the theta-derivative of
// P(Z = +1).
struct HardLimiterProbabilities {
  double plus;   // Q((gamma - nu1) / sqrt(nu2))
  double minus;  // 1 - plus, computed without cancellation
  double dplus;
};

HardLimiterProbabilities hard_limiter_probabilities(const ModelSpec& model, double theta) {
  const auto in = gaussian_input(model, theta);
  const double sd = std::sqrt(in.variance.value);
  const double offset = model.gamma - in.mean.value;
  const double x = offset / sd;
  HardLimiterProbabilities p{q_function(x), q_function(-x), 0.0};
  if (!(p.plus > 0.0 && p.minus > 0.0)) {
    domain_error(model, theta, "one output level has vanishing probability");
  }
  p.dplus = standard_normal_pdf(x) *
            (in.mean.derivative * sd + offset * in.variance.derivative / (2.0 * sd)) /
            in.variance.value;
  return p;
}

// Inverse-CDF Poisson sampler with the distribution tabulated around its mode.
class PoissonInverter {
 public:
  explicit PoissonInverter(double rate)
      : rate_(rate), mode_(std::floor(rate)) {
    mode_pmf_ = std::exp(mode_ * std::log(rate) - rate - std::lgamma(mode_ + 1.0));
    mode_cdf_ = boost::math::gamma_q(mode_ + 1.0, rate);
  }

  double operator()(double u) const {
    double k = mode_;
    double pmf = mode_pmf_;
    double cdf = mode_cdf_;
    if (u <= cdf) {
      // Walk down while P(X <= k - 1) still covers u.
      while (k > 0.0 && u <= cdf - pmf) {
        cdf -= pmf;
        pmf *= k / rate_;
        k -= 1.0;
      }
      return k;
    }
    while (u > cdf && pmf > 0.0) {
      k += 1.0;
      pmf *= rate_ / k;
      cdf += pmf;
    }
    return k;
  }

 private:
  double rate_;
  double mode_;
  double mode_pmf_;
  double mode_cdf_;
};

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::GaussianLocScale: return "gaussian";
    case ModelKind::Exponential: return "exponential";
    case ModelKind::LaplaceScale: return "laplace-scale";
    case ModelKind::Bernoulli: return "bernoulli";
    case ModelKind::Poisson: return "poisson";
    case ModelKind::HardLimitedGaussian: return "hard-limiter";
    case ModelKind::SquaringGaussian: return "squaring";
    case ModelKind::SoftLimiterGaussian: return "soft-limiter";
  }
  return "unknown";
}

ParameterMap ParameterMap::identity() {
  return {[](double t) { return t; }, [](double) { return 1.0; }};
}

ParameterMap ParameterMap::constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }};
}

ParameterMap ParameterMap::polynomial(std::vector<double> coeffs) {
  auto value = [coeffs](double t) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
  };
  auto derivative = [coeffs](double t) {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * t + static_cast<double>(k) * coeffs[k];
    return acc;
  };
  return {std::move(value), std::move(derivative)};
}

ModelSpec ModelSpec::gaussian() { return {}; }
ModelSpec ModelSpec::exponential() { return {.kind = ModelKind::Exponential}; }
ModelSpec ModelSpec::laplace_scale() { return {.kind = ModelKind::LaplaceScale}; }
ModelSpec ModelSpec::bernoulli() { return {.kind = ModelKind::Bernoulli}; }
ModelSpec ModelSpec::poisson() { return {.kind = ModelKind::Poisson}; }
ModelSpec ModelSpec::squaring_gaussian() { return {.kind = ModelKind::SquaringGaussian}; }

ModelSpec ModelSpec::hard_limited_gaussian(double gamma) {
  ModelSpec m{.kind = ModelKind::HardLimitedGaussian, .gamma = gamma};
  m.validate();
  return m;
}

ModelSpec ModelSpec::soft_limiter_gaussian(double zeta) {
  ModelSpec m{.kind = ModelKind::SoftLimiterGaussian, .zeta = zeta};
  m.validate();
  return m;
}

void ModelSpec::validate() const {
  if (!std::isfinite(gamma)) throw Error(ErrorCode::ParameterDomain, "gamma must be finite");
  if (kind == ModelKind::SoftLimiterGaussian && !(zeta > 0.0 && std::isfinite(zeta))) {
    throw Error(ErrorCode::ParameterDomain, "soft-limiter zeta must be positive");
  }
  if (!mean_map.value || !mean_map.derivative || !variance_map.value || !variance_map.derivative) {
    throw Error(ErrorCode::InvalidArgument, "parameter maps need both value and derivative");
  }
}

bool has_analytic_moments(ModelKind kind) noexcept { return kind != ModelKind::SoftLimiterGaussian; }

bool has_finite_alphabet(ModelKind kind) noexcept {
  return kind == ModelKind::Bernoulli || kind == ModelKind::HardLimitedGaussian;
}

bool has_gaussian_input(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::GaussianLocScale:
    case ModelKind::HardLimitedGaussian:
    case ModelKind::SquaringGaussian:
    case ModelKind::SoftLimiterGaussian:
      return true;
    default:
      return false;
  }
}

double q_function(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

MomentPoint model_moments(const ModelSpec& model, double theta) {
  model.validate();
  MapValue nu{};
  switch (model.kind) {
    case ModelKind::GaussianLocScale: {
      const auto in = gaussian_input(model, theta);
      return MomentPoint(theta, in.mean.value, in.variance.value, 0.0, 3.0, in.mean.derivative,
                         in.variance.derivative);
    }
    case ModelKind::Exponential: {
      const double rate = single_parameter(model, theta, &nu);
      return MomentPoint(theta, 1.0 / rate, 1.0 / (rate * rate), 2.0, 9.0,
                         -nu.derivative / (rate * rate), -2.0 * nu.derivative / (rate * rate * rate));
    }
    case ModelKind::LaplaceScale: {
      const double scale = single_parameter(model, theta, &nu);
      return MomentPoint(theta, 0.0, 2.0 * scale * scale, 0.0, 6.0, 0.0,
                         4.0 * scale * nu.derivative);
    }
    case ModelKind::Bernoulli: {
      const double p = single_parameter(model, theta, &nu);
      const double var = p * (1.0 - p);
      return MomentPoint(theta, p, var, (1.0 - 2.0 * p) / std::sqrt(var), 1.0 / var - 3.0,
                         nu.derivative, (1.0 - 2.0 * p) * nu.derivative);
    }
    case ModelKind::Poisson: {
      const double rate = single_parameter(model, theta, &nu);
      return MomentPoint(theta, rate, rate, 1.0 / std::sqrt(rate), 1.0 / rate + 3.0, nu.derivative,
                         nu.derivative);
    }
    case ModelKind::HardLimitedGaussian: {
      const auto p = hard_limiter_probabilities(model, theta);
      const double pq = p.plus * p.minus;
      const double asym = p.minus - p.plus;
      return MomentPoint(theta, p.plus - p.minus, 4.0 * pq, asym / std::sqrt(pq), 1.0 / pq - 3.0,
                         2.0 * p.dplus, 4.0 * asym * p.dplus);
    }
    case ModelKind::SquaringGaussian: {
      // Z = Y^2 with Y ~ N(m, v) is v times a noncentral chi-square with one
      // degree of freedom and noncentrality lambda = m^2 / v.
      const auto in = gaussian_input(model, theta);
      const double m = in.mean.value;
      const double v = in.variance.value;
      const double lambda = m * m / v;
      const double mu2 = 2.0 * v * v * (1.0 + 2.0 * lambda);
      const double mu3 = 8.0 * v * v * v * (1.0 + 3.0 * lambda);
      const double mu4 =
          v * v * v * v * (48.0 * (1.0 + 4.0 * lambda) + 12.0 * (1.0 + 2.0 * lambda) * (1.0 + 2.0 * lambda));
      const auto [mu3bar, mu4bar] = normalize_moments(m * m + v, mu2, mu3, mu4);
      const double dm = in.mean.derivative;
      const double dv = in.variance.derivative;
      return MomentPoint(theta, m * m + v, mu2, mu3bar, mu4bar, 2.0 * m * dm + dv,
                         4.0 * v * dv + 8.0 * m * dm * v + 4.0 * m * m * dv);
    }
    case ModelKind::SoftLimiterGaussian:
      throw Error(ErrorCode::UnsupportedAnalytic,
                  "soft-limiter moments are only available by simulation");
  }
  throw Error(ErrorCode::InvalidArgument, "unknown model kind");
}

std::optional<double> exact_fisher(const ModelSpec& model, double theta) {
  model.validate();
  MapValue nu{};
  switch (model.kind) {
    case ModelKind::GaussianLocScale:
      return input_fisher(model, theta);
    case ModelKind::Exponential:
    case ModelKind::LaplaceScale: {
      const double v = single_parameter(model, theta, &nu);
      return nu.derivative * nu.derivative / (v * v);
    }
    case ModelKind::Bernoulli: {
      const double p = single_parameter(model, theta, &nu);
      return nu.derivative * nu.derivative / (p * (1.0 - p));
    }
    case ModelKind::Poisson: {
      const double rate = single_parameter(model, theta, &nu);
      return nu.derivative * nu.derivative / rate;
    }
    case ModelKind::HardLimitedGaussian: {
      const auto p = hard_limiter_probabilities(model, theta);
      return p.dplus * p.dplus / (p.plus * p.minus);
    }
    case ModelKind::SquaringGaussian:
    case ModelKind::SoftLimiterGaussian:
      return std::nullopt;
  }
  return std::nullopt;
}

double input_fisher(const ModelSpec& model, double theta) {
  const auto in = gaussian_input(model, theta);
  const double v = in.variance.value;
  return in.mean.derivative * in.mean.derivative / v +
         in.variance.derivative * in.variance.derivative / (2.0 * v * v);
}

double apply_nonlinearity(const ModelSpec& model, double y) {
  switch (model.kind) {
    case ModelKind::HardLimitedGaussian:
      return y >= model.gamma ? 1.0 : -1.0;
    case ModelKind::SquaringGaussian:
      return y * y;
    case ModelKind::SoftLimiterGaussian:
      return std::erf(y / (std::numbers::sqrt2 * model.zeta));
    default:
      return y;
  }
}

std::vector<double> draw_base_variates(const ModelSpec& model, std::size_t n, const StreamKey& key) {
  std::vector<double> base(n);
  if (has_gaussian_input(model.kind)) {
    fill_standard_normals(key, base);
  } else {
    fill_uniforms(key, base);
  }
  return base;
}

void transform_variates(const ModelSpec& model, double theta, std::span<const double> base,
                        std::span<double> out) {
  if (base.size() != out.size()) {
    throw Error(ErrorCode::InvalidArgument, "base and output spans differ in length");
  }
  model.validate();
  const std::size_t n = base.size();
  MapValue nu{};
  switch (model.kind) {
    case ModelKind::GaussianLocScale:
    case ModelKind::HardLimitedGaussian:
    case ModelKind::SquaringGaussian:
    case ModelKind::SoftLimiterGaussian: {
      const auto in = gaussian_input(model, theta);
      const double m = in.mean.value;
      const double sd = std::sqrt(in.variance.value);
      switch (model.kind) {
        case ModelKind::HardLimitedGaussian:
          for (std::size_t i = 0; i < n; ++i) out[i] = m + sd * base[i] >= model.gamma ? 1.0 : -1.0;
          break;
        case ModelKind::SquaringGaussian:
          for (std::size_t i = 0; i < n; ++i) {
            const double y = m + sd * base[i];
            out[i] = y * y;
          }
          break;
        case ModelKind::SoftLimiterGaussian: {
          const double scale = 1.0 / (std::numbers::sqrt2 * model.zeta);
          for (std::size_t i = 0; i < n; ++i) out[i] = std::erf((m + sd * base[i]) * scale);
          break;
        }
        default:
          for (std::size_t i = 0; i < n; ++i) out[i] = m + sd * base[i];
          break;
      }
      return;
    }
    case ModelKind::Exponential: {
      const double rate = single_parameter(model, theta, &nu);
      for (std::size_t i = 0; i < n; ++i) out[i] = -std::log(base[i]) / rate;
      return;
    }
    case ModelKind::LaplaceScale: {
      const double scale = single_parameter(model, theta, &nu);
      for (std::size_t i = 0; i < n; ++i) {
        const double u = base[i];
        out[i] = scale * (u < 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u)));
      }
      return;
    }
    case ModelKind::Bernoulli: {
      const double p = single_parameter(model, theta, &nu);
      for (std::size_t i = 0; i < n; ++i) out[i] = base[i] < p ? 1.0 : 0.0;
      return;
    }
    case ModelKind::Poisson: {
      const PoissonInverter invert(single_parameter(model, theta, &nu));
      for (std::size_t i = 0; i < n; ++i) out[i] = invert(base[i]);
      return;
    }
  }
}

std::vector<double> sample(const ModelSpec& model, double theta, std::size_t n, const StreamKey& key) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be at least 1");
  auto values = draw_base_variates(model, n, key);
  transform_variates(model, theta, values, values);
  return values;
}

std::vector<double> sample(const ModelSpec& model, double theta, std::size_t n, std::uint64_t seed) {
  return sample(model, theta, n, StreamKey{.seed = seed});
}

}  // namespace fisherbound
