#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fisherbound/moments.hpp"
#include "fisherbound/random.hpp"

namespace fisherbound {

enum class ModelKind : std::uint8_t {
  GaussianLocScale,
  Exponential,
  LaplaceScale,
  Bernoulli,
  Poisson,
  HardLimitedGaussian,
  SquaringGaussian,
  SoftLimiterGaussian,
};

std::string_view to_string(ModelKind kind) noexcept;

/// A scalar map theta -> nu(theta) together with its derivative.
struct ParameterMap {
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  static ParameterMap identity();
  static ParameterMap constant(double c);
  /// sum_k coeffs[k] theta^k
  static ParameterMap polynomial(std::vector<double> coeffs);
};

/// A parametric system from the model zoo.
///
/// `mean_map` carries nu(theta) for single-parameter families (Exponential
/// rate, Laplace scale, Bernoulli probability, Poisson rate) and the input
/// mean nu1(theta) for the Gaussian-driven kinds. `variance_map` is the
/// Gaussian input variance nu2(theta) and is ignored by the other kinds.
struct ModelSpec {
  ModelKind kind = ModelKind::GaussianLocScale;
  double gamma = 0.0;  // hard-limiter threshold
  double zeta = 1.0;   // soft-limiter saturation scale
  ParameterMap mean_map = ParameterMap::identity();
  ParameterMap variance_map = ParameterMap::constant(1.0);

  static ModelSpec gaussian();
  static ModelSpec exponential();
  static ModelSpec laplace_scale();
  static ModelSpec bernoulli();
  static ModelSpec poisson();
  static ModelSpec hard_limited_gaussian(double gamma);
  static ModelSpec squaring_gaussian();
  static ModelSpec soft_limiter_gaussian(double zeta);

  /// Throws ParameterDomain for invalid shape parameters (zeta <= 0, non-finite gamma).
  void validate() const;
};

/// True when model_moments has a closed form for this kind.
bool has_analytic_moments(ModelKind kind) noexcept;
/// True when the output takes finitely many values.
bool has_finite_alphabet(ModelKind kind) noexcept;
/// True when samples are a function of a Gaussian input Y.
bool has_gaussian_input(ModelKind kind) noexcept;

/// Moments and their analytic theta-derivatives. Throws ParameterDomain for
/// theta outside the model's domain and UnsupportedAnalytic for the
/// soft-limiter.
MomentPoint model_moments(const ModelSpec& model, double theta);

/// Closed-form Fisher information; empty for the squaring and soft-limiter
/// kinds.
std::optional<double> exact_fisher(const ModelSpec& model, double theta);

/// Fisher information of the Gaussian input N(nu1(theta), nu2(theta)) built
/// from the model's maps. This is the reference F_Y for information loss.
double input_fisher(const ModelSpec& model, double theta);

/// Applies the system nonlinearity to one input value (identity for the
/// non-Gaussian-input kinds).
double apply_nonlinearity(const ModelSpec& model, double y);

/// Base variates consumed by the sampler: standard normals for the
/// Gaussian-input kinds, uniforms on (0, 1) otherwise. Depends only on the
/// kind, n and the key, never on theta, so two thetas sharing a key share
/// their random inputs.
std::vector<double> draw_base_variates(const ModelSpec& model, std::size_t n, const StreamKey& key);

/// Maps base variates to system outputs at theta.
void transform_variates(const ModelSpec& model, double theta, std::span<const double> base,
                        std::span<double> out);

/// n deterministic samples of the system output at theta.
std::vector<double> sample(const ModelSpec& model, double theta, std::size_t n, std::uint64_t seed);
std::vector<double> sample(const ModelSpec& model, double theta, std::size_t n, const StreamKey& key);

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
double q_function(double x) noexcept;

}  // namespace fisherbound
