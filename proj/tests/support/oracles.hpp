#pragma once

// Reference computations that share no code with the library: moments by
// direct enumeration or quadrature, Fisher information by summing squared
// scores, and the bound by brute-force search over the mixing weight.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

struct Moments {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu3bar = 0.0;
  double mu4bar = 0.0;
  double dmu1 = 0.0;
  double dmu2 = 0.0;
};

// Atoms x with probabilities p, moving with velocities dx and dp.
inline Moments enumerate(const std::vector<double>& x, const std::vector<double>& p,
                         const std::vector<double>& dx, const std::vector<double>& dp) {
  Moments m;
  for (std::size_t k = 0; k < x.size(); ++k) {
    m.mu1 += p[k] * x[k];
    m.dmu1 += dp[k] * x[k] + p[k] * dx[k];
  }
  double mu3 = 0.0, mu4 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - m.mu1;
    m.mu2 += p[k] * d * d;
    mu3 += p[k] * d * d * d;
    mu4 += p[k] * d * d * d * d;
    m.dmu2 += dp[k] * d * d + 2.0 * p[k] * d * (dx[k] - m.dmu1);
  }
  m.mu3bar = mu3 / std::pow(m.mu2, 1.5);
  m.mu4bar = mu4 / (m.mu2 * m.mu2);
  return m;
}

inline double discrete_fisher(const std::vector<double>& p, const std::vector<double>& dp) {
  double f = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] > 0.0) f += dp[k] * dp[k] / p[k];
  }
  return f;
}

inline Moments bernoulli(double q) {
  return enumerate({0.0, 1.0}, {1.0 - q, q}, {0.0, 0.0}, {-1.0, 1.0});
}

// Poisson pmf truncated far in the tail; dp_k = p_k (k / nu - 1).
inline void poisson_pmf(double nu, std::vector<double>& x, std::vector<double>& p,
                        std::vector<double>& dp) {
  const int kmax = static_cast<int>(nu + 40.0 * std::sqrt(nu) + 60.0);
  x.clear();
  p.clear();
  dp.clear();
  for (int k = 0; k <= kmax; ++k) {
    const double pk = std::exp(k * std::log(nu) - nu - std::lgamma(k + 1.0));
    x.push_back(k);
    p.push_back(pk);
    dp.push_back(pk * (k / nu - 1.0));
  }
}

inline Moments poisson(double nu) {
  std::vector<double> x, p, dp;
  poisson_pmf(nu, x, p, dp);
  return enumerate(x, p, std::vector<double>(x.size(), 0.0), dp);
}

inline double poisson_fisher(double nu) {
  std::vector<double> x, p, dp;
  poisson_pmf(nu, x, p, dp);
  return discrete_fisher(p, dp);
}

inline double gaussian_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// Sign quantizer of N(mean(t), var(t)) at threshold gamma; outputs +-1.
// Probability derivatives come from a central difference of erfc.
struct HardLimiter {
  double gamma = 0.0;
  std::function<double(double)> mean = [](double t) { return t; };
  std::function<double(double)> var = [](double) { return 1.0; };

  double prob_plus(double t) const { return gaussian_tail((gamma - mean(t)) / std::sqrt(var(t))); }

  void pmf(double t, std::vector<double>& p, std::vector<double>& dp) const {
    constexpr double h = 1e-5;
    const double q = prob_plus(t);
    const double dq = (prob_plus(t + h) - prob_plus(t - h)) / (2.0 * h);
    p = {1.0 - q, q};
    dp = {-dq, dq};
  }

  Moments moments(double t) const {
    std::vector<double> p, dp;
    pmf(t, p, dp);
    return enumerate({-1.0, 1.0}, p, {0.0, 0.0}, dp);
  }

  double fisher(double t) const {
    std::vector<double> p, dp;
    pmf(t, p, dp);
    return discrete_fisher(p, dp);
  }
};

// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Exponential with rate nu: raw moments by quadrature of the density.
inline Moments exponential_by_quadrature(double nu) {
  const auto raw = [nu](int k) {
    return simpson([&](double z) { return std::pow(z, k) * nu * std::exp(-nu * z); }, 0.0,
                   80.0 / nu);
  };
  const double m1 = raw(1), m2 = raw(2), m3 = raw(3), m4 = raw(4);
  Moments m;
  m.mu1 = m1;
  m.mu2 = m2 - m1 * m1;
  const double c3 = m3 - 3 * m1 * m2 + 2 * m1 * m1 * m1;
  const double c4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
  m.mu3bar = c3 / std::pow(m.mu2, 1.5);
  m.mu4bar = c4 / (m.mu2 * m.mu2);
  return m;
}

// Raw moments E[Y^k], k = 0..n, of N(m, v) via E[Y^k] = m E[Y^k-1] + (k-1) v E[Y^k-2].
inline std::vector<double> gaussian_raw_moments(double m, double v, int n) {
  std::vector<double> r(n + 1);
  r[0] = 1.0;
  r[1] = m;
  for (int k = 2; k <= n; ++k) r[k] = m * r[k - 1] + (k - 1) * v * r[k - 2];
  return r;
}

// Z = Y^2 with Y ~ N(m, v): central moments of Z from raw moments of Y.
inline Moments squaring_static(double m, double v) {
  const auto r = gaussian_raw_moments(m, v, 8);
  const double z1 = r[2], z2 = r[4], z3 = r[6], z4 = r[8];
  Moments out;
  out.mu1 = z1;
  out.mu2 = z2 - z1 * z1;
  const double c3 = z3 - 3 * z1 * z2 + 2 * z1 * z1 * z1;
  const double c4 = z4 - 4 * z1 * z3 + 6 * z1 * z1 * z2 - 3 * z1 * z1 * z1 * z1;
  out.mu3bar = c3 / std::pow(out.mu2, 1.5);
  out.mu4bar = c4 / (out.mu2 * out.mu2);
  return out;
}

// Squaring with Y ~ N(theta, 1); derivatives by a fourth-order difference.
inline Moments squaring(double theta) {
  Moments out = squaring_static(theta, 1.0);
  constexpr double h = 1e-3;
  const auto at = [](double t) { return squaring_static(t, 1.0); };
  const auto a2 = at(theta + 2 * h), a1 = at(theta + h), b1 = at(theta - h), b2 = at(theta - 2 * h);
  out.dmu1 = (-a2.mu1 + 8 * a1.mu1 - 8 * b1.mu1 + b2.mu1) / (12 * h);
  out.dmu2 = (-a2.mu2 + 8 * a1.mu2 - 8 * b1.mu2 + b2.mu2) / (12 * h);
  return out;
}

// sup_beta (a + beta b)^2 / (1 + 2 beta c + beta^2 d) / mu2 by scanning beta
// on a log-spaced grid, refined by golden-section search around the best
// cell, plus the limit b^2 / d.
inline double bound_by_search(const Moments& m) {
  const double a = m.dmu1, b = m.dmu2 / std::sqrt(m.mu2), c = m.mu3bar, d = m.mu4bar - 1.0;
  const auto h = [&](double beta) {
    const double den = 1.0 + 2.0 * beta * c + beta * beta * d;
    return den > 1e-14 ? (a + beta * b) * (a + beta * b) / den : 0.0;
  };
  std::vector<double> betas{0.0};
  for (int e = -8 * 40; e <= 8 * 40; ++e) {
    const double mag = std::pow(10.0, e / 40.0);
    betas.push_back(mag);
    betas.push_back(-mag);
  }
  std::sort(betas.begin(), betas.end());
  std::size_t best = 0;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (h(betas[i]) > h(betas[best])) best = i;
  }
  double lo = betas[best > 0 ? best - 1 : 0];
  double hi = betas[std::min(best + 1, betas.size() - 1)];
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    if (h(x1) < h(x2)) {
      lo = x1;
    } else {
      hi = x2;
    }
  }
  double value = std::max(h(betas[best]), h(0.5 * (lo + hi)));
  if (d > 0.0) value = std::max(value, b * b / d);
  return value / m.mu2;
}

}  // namespace oracle
