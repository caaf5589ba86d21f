#pragma once

// Reference implementations used only by the tests. They are written from
// textbook formulas with the standard library alone, independently of the
// library's own code paths.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;
using cd = std::complex<double>;

// Standardized cdfs.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
inline double cauchy_cdf(double z) { return 0.5 + std::atan(z) / pi; }
inline double laplace_cdf(double z) { return z < 0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z); }
inline double logistic_cdf(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// Regularized lower incomplete gamma by its power series; fine for x up to ~60.
inline double gamma_p(double a, double x) {
  if (x <= 0) return 0.0;
  double term = 1.0 / a, sum = term;
  for (int k = 1; k < 2000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return std::exp(a * std::log(x) - x - std::lgamma(a)) * sum;
}

// Characteristic functions E[exp(-2 pi i xi V)] of the centered laws.
inline double normal_ft(double sigma, double xi) { return std::exp(-2.0 * pi * pi * sigma * sigma * xi * xi); }
inline double cauchy_ft(double sigma, double xi) { return std::exp(-2.0 * pi * sigma * std::abs(xi)); }
inline double laplace_ft(double sigma, double xi) { return 1.0 / (1.0 + 4.0 * pi * pi * sigma * sigma * xi * xi); }
inline double logistic_ft(double sigma, double xi) {
  const double t = 2.0 * pi * pi * sigma * xi;
  return t == 0.0 ? 1.0 : t / std::sinh(t);
}
inline cd gamma_ft(double alpha, double beta, double xi) {
  return std::pow(cd(1.0, 2.0 * pi * beta * xi), -alpha);
}

/// E[exp(-2 pi i t U)] for U uniform on [0, 1).
inline cd uniform_ft(double t) {
  if (t == 0.0) return 1.0;
  return (1.0 - std::exp(cd(0.0, -2.0 * pi * t))) / cd(0.0, 2.0 * pi * t);
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Wrapped density sum_k rho [H(rho(k+u)) - H(rho(k+u) - 1)] with a generous fixed range.
inline double wrapped(const std::function<double(double)>& cdf, double rho, double u, int k_range) {
  double s = 0.0;
  for (int k = -k_range; k <= k_range; ++k) {
    const double v = rho * (k + u);
    s += rho * (cdf(v) - cdf(v - 1.0));
  }
  return s;
}

/// Density of log_c(X_a X_b) for two step seeds: rho_a rho_b times the
/// overlap length of [0, 1/rho_a) and [w - 1/rho_b, w).
inline double trapezoid(double rho_a, double rho_b, double w) {
  const double lo = std::max(0.0, w - 1.0 / rho_b);
  const double hi = std::min(w, 1.0 / rho_a);
  return hi > lo ? rho_a * rho_b * (hi - lo) : 0.0;
}

/// Step-seed Benford density on [1, b): 1 / (x ln b).
inline double step_benford_pdf(double b, double x) { return (x >= 1.0 && x < b) ? 1.0 / (x * std::log(b)) : 0.0; }

}  // namespace oracle
