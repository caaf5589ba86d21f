#pragma once

#include <cmath>
#include <cstdio>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "errors.hpp"

namespace benford {

enum class Family { Gauss, Cauchy, Laplace, Logistic, Gamma, Step, PiecewiseLinear };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::Gauss: return "gauss";
    case Family::Cauchy: return "cauchy";
    case Family::Laplace: return "laplace";
    case Family::Logistic: return "logistic";
    case Family::Gamma: return "gamma";
    case Family::Step: return "step";
    case Family::PiecewiseLinear: return "pwlinear";
  }
  return "unknown";
}

inline std::optional<Family> family_from_name(std::string_view s) {
  for (Family f : {Family::Gauss, Family::Cauchy, Family::Laplace, Family::Logistic, Family::Gamma,
                   Family::Step, Family::PiecewiseLinear})
    if (family_name(f) == s) return f;
  return std::nullopt;
}

/// A seed function H: a cdf from one of the supported parametric families.
/// Immutable; the named constructors validate the family's parameters.
class SeedSpec {
 public:
  static SeedSpec gauss(double mu, double sigma) { return located(Family::Gauss, mu, sigma); }
  static SeedSpec cauchy(double mu, double sigma) { return located(Family::Cauchy, mu, sigma); }
  static SeedSpec laplace(double mu, double sigma) { return located(Family::Laplace, mu, sigma); }
  static SeedSpec logistic(double mu, double sigma) { return located(Family::Logistic, mu, sigma); }

  static SeedSpec gamma(double alpha, double beta) {
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    SeedSpec s(Family::Gamma);
    s.alpha_ = alpha;
    s.beta_ = beta;
    return s;
  }

  /// Unit step: H(v) = 1 for v >= 0, else 0.
  static SeedSpec step() { return SeedSpec(Family::Step); }

  /// H(v) = slope * v on [0, 1/slope), clamped to [0, 1] outside.
  static SeedSpec piecewise_linear(double slope) { return piecewise_linear(slope, 1.0 / slope); }

  static SeedSpec piecewise_linear(double slope, double width) {
    require_positive(slope, "slope");
    require_positive(width, "width");
    if (std::abs(slope * width - 1.0) > 1e-12)
      throw DomainError("piecewise-linear seed requires slope * width == 1");
    SeedSpec s(Family::PiecewiseLinear);
    s.slope_ = slope;
    s.width_ = width;
    return s;
  }

  Family family() const noexcept { return family_; }
  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double slope() const noexcept { return slope_; }
  double width() const noexcept { return width_; }

  bool is_symmetric() const noexcept {
    return family_ == Family::Gauss || family_ == Family::Cauchy || family_ == Family::Laplace ||
           family_ == Family::Logistic;
  }
  bool has_density() const noexcept { return family_ != Family::Step; }
  bool has_closed_form_ft() const noexcept { return is_symmetric() || family_ == Family::Gamma; }
  bool heavy_tailed() const noexcept { return family_ == Family::Cauchy; }

  /// Scale parameter: sigma, beta for Gamma, width for PiecewiseLinear, 0 for Step.
  double scale() const noexcept {
    switch (family_) {
      case Family::Gamma: return beta_;
      case Family::PiecewiseLinear: return width_;
      case Family::Step: return 0.0;
      default: return sigma_;
    }
  }

  std::string describe() const {
    std::string s(family_name(family_));
    auto num = [](double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", v);
      return std::string(buf);
    };
    if (is_symmetric()) s += "(mu=" + num(mu_) + ",sigma=" + num(sigma_) + ")";
    if (family_ == Family::Gamma) s += "(alpha=" + num(alpha_) + ",beta=" + num(beta_) + ")";
    if (family_ == Family::PiecewiseLinear) s += "(slope=" + num(slope_) + ")";
    return s;
  }

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;

 private:
  explicit SeedSpec(Family f) : family_(f) {}

  static SeedSpec located(Family f, double mu, double sigma) {
    if (!std::isfinite(mu)) throw DomainError("mu must be finite");
    require_positive(sigma, "sigma");
    SeedSpec s(f);
    s.mu_ = mu;
    s.sigma_ = sigma;
    return s;
  }

  static void require_positive(double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0))
      throw DomainError(std::string(name) + " must be finite and > 0");
  }

  Family family_;
  double mu_ = 0.0;
  double sigma_ = 0.0;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double slope_ = 0.0;
  double width_ = 0.0;
};

namespace detail {
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt2 = std::numbers::sqrt2;

/// Point splitting each family into a lower part (use H) and upper part (use 1 - H).
inline double seed_center(const SeedSpec& s) {
  switch (s.family()) {
    case Family::Gamma: return s.alpha() * s.beta();
    case Family::Step: return 0.0;
    case Family::PiecewiseLinear: return 0.5 * s.width();
    default: return s.mu();
  }
}
}  // namespace detail

/// H(v).
inline double seed_cdf(const SeedSpec& s, double v) {
  using detail::kPi;
  const double z = s.is_symmetric() ? (v - s.mu()) / s.sigma() : 0.0;
  switch (s.family()) {
    case Family::Gauss: return 0.5 * std::erfc(-z / detail::kSqrt2);
    case Family::Cauchy: return z < 0.0 ? std::atan(-1.0 / z) / kPi : 0.5 + std::atan(z) / kPi;
    case Family::Laplace: return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
    case Family::Logistic: return 1.0 / (1.0 + std::exp(-z));
    case Family::Gamma: return v <= 0.0 ? 0.0 : boost::math::gamma_p(s.alpha(), v / s.beta());
    case Family::Step: return v >= 0.0 ? 1.0 : 0.0;
    case Family::PiecewiseLinear:
      if (v < 0.0) return 0.0;
      if (v >= s.width()) return 1.0;
      return s.slope() * v;
  }
  return 0.0;
}

/// 1 - H(v), computed without cancellation in the upper tail.
inline double seed_survival(const SeedSpec& s, double v) {
  using detail::kPi;
  const double z = s.is_symmetric() ? (v - s.mu()) / s.sigma() : 0.0;
  switch (s.family()) {
    case Family::Gauss: return 0.5 * std::erfc(z / detail::kSqrt2);
    case Family::Cauchy: return z > 0.0 ? std::atan(1.0 / z) / kPi : 0.5 - std::atan(z) / kPi;
    case Family::Laplace: return z > 0.0 ? 0.5 * std::exp(-z) : 1.0 - 0.5 * std::exp(z);
    case Family::Logistic: return 1.0 / (1.0 + std::exp(z));
    case Family::Gamma: return v <= 0.0 ? 1.0 : boost::math::gamma_q(s.alpha(), v / s.beta());
    case Family::PiecewiseLinear: return v <= 0.0 ? 1.0 : v >= s.width() ? 0.0 : s.slope() * (s.width() - v);
    default: return 1.0 - seed_cdf(s, v);
  }
}

/// H(hi) - H(lo) for lo <= hi, accurate in both tails.
inline double seed_interval_mass(const SeedSpec& s, double lo, double hi) {
  if (s.family() == Family::Step) return (lo < 0.0 && hi >= 0.0) ? 1.0 : 0.0;
  const double c = detail::seed_center(s);
  double m = lo >= c ? seed_survival(s, lo) - seed_survival(s, hi) : seed_cdf(s, hi) - seed_cdf(s, lo);
  return m > 0.0 ? m : 0.0;
}

/// h(v) = H'(v). The step seed has no density.
inline double seed_pdf(const SeedSpec& s, double v) {
  using detail::kPi;
  const double z = s.is_symmetric() ? (v - s.mu()) / s.sigma() : 0.0;
  switch (s.family()) {
    case Family::Gauss: return std::exp(-0.5 * z * z) / (s.sigma() * std::sqrt(2.0 * kPi));
    case Family::Cauchy: return 1.0 / (kPi * s.sigma() * (1.0 + z * z));
    case Family::Laplace: return std::exp(-std::abs(z)) / (2.0 * s.sigma());
    case Family::Logistic: {
      const double e = std::exp(-std::abs(z));
      return e / (s.sigma() * (1.0 + e) * (1.0 + e));
    }
    case Family::Gamma:
      if (v <= 0.0) return 0.0;
      return boost::math::gamma_p_derivative(s.alpha(), v / s.beta()) / s.beta();
    case Family::PiecewiseLinear: return (v >= 0.0 && v < s.width()) ? s.slope() : 0.0;
    case Family::Step: break;
  }
  throw UnsupportedOperation("step seed has no density");
}

/// Inverse cdf H^{-1}(p) for p in (0, 1).
inline double seed_quantile(const SeedSpec& s, double p) {
  using detail::kPi;
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile requires p in (0, 1)");
  switch (s.family()) {
    case Family::Gauss: return s.mu() - s.sigma() * detail::kSqrt2 * boost::math::erfc_inv(2.0 * p);
    case Family::Cauchy:
      return p < 0.5 ? s.mu() - s.sigma() / std::tan(kPi * p) : s.mu() + s.sigma() / std::tan(kPi * (1.0 - p));
    case Family::Laplace:
      return p < 0.5 ? s.mu() + s.sigma() * std::log(2.0 * p) : s.mu() - s.sigma() * std::log(2.0 * (1.0 - p));
    case Family::Logistic: return s.mu() + s.sigma() * (std::log(p) - std::log1p(-p));
    case Family::Gamma: return s.beta() * boost::math::gamma_p_inv(s.alpha(), p);
    case Family::Step: return 0.0;
    case Family::PiecewiseLinear: return p * s.width();
  }
  return 0.0;
}

/// H^{-1}(1 - q) for small q, without forming 1 - q.
inline double seed_upper_quantile(const SeedSpec& s, double q) {
  using detail::kPi;
  if (!(q > 0.0 && q < 1.0)) throw DomainError("upper quantile requires q in (0, 1)");
  switch (s.family()) {
    case Family::Gauss: return s.mu() + s.sigma() * detail::kSqrt2 * boost::math::erfc_inv(2.0 * q);
    case Family::Cauchy:
      return q < 0.5 ? s.mu() + s.sigma() / std::tan(kPi * q) : s.mu() - s.sigma() / std::tan(kPi * (1.0 - q));
    case Family::Laplace:
      return q < 0.5 ? s.mu() - s.sigma() * std::log(2.0 * q) : s.mu() + s.sigma() * std::log(2.0 * (1.0 - q));
    case Family::Logistic: return s.mu() + s.sigma() * (std::log1p(-q) - std::log(q));
    case Family::Gamma: return s.beta() * boost::math::gamma_q_inv(s.alpha(), q);
    case Family::Step: return 0.0;
    case Family::PiecewiseLinear: return s.width() - q * s.width();
  }
  return 0.0;
}

/// Points where H is not smooth (jumps or kinks in h).
inline std::vector<double> seed_breakpoints(const SeedSpec& s) {
  switch (s.family()) {
    case Family::Laplace: return {s.mu()};
    case Family::Gamma:
    case Family::Step: return {0.0};
    case Family::PiecewiseLinear: return {0.0, s.width()};
    default: return {};
  }
}

/// Interval [lo, hi] of v outside which each tail of H carries less than eps,
/// except for heavy tails, where the interval is capped and `capped` is set.
struct SeedSupport {
  double lo;
  double hi;
  bool capped;
};

inline SeedSupport seed_support(const SeedSpec& s, double eps = 1e-14) {
  switch (s.family()) {
    case Family::Step: return {0.0, 0.0, false};
    case Family::PiecewiseLinear: return {0.0, s.width(), false};
    case Family::Gamma: return {0.0, seed_upper_quantile(s, eps), false};
    case Family::Cauchy: return {s.mu() - 200.0 * s.sigma(), s.mu() + 200.0 * s.sigma(), true};
    default: return {seed_quantile(s, eps), seed_upper_quantile(s, eps), false};
  }
}

/// A complex transform value with its polar decomposition.
struct ComplexFT {
  double re = 0.0;
  double im = 0.0;

  double r() const noexcept { return std::hypot(re, im); }
  double phi() const noexcept { return std::atan2(im, re); }
  std::complex<double> value() const noexcept { return {re, im}; }
};

/// z = 1 + i*y with y = 2*pi*beta*xi, in polar form z = r e^{i phi}.
struct GammaPolar {
  double y;
  double r;
  double phi;
};

inline GammaPolar gamma_polar(double beta, double xi) {
  const double y = 2.0 * detail::kPi * beta * xi;
  return {y, std::hypot(1.0, y), std::atan2(y, 1.0)};
}

/// Fourier transform E[exp(-2 pi i xi V)] of the seed density, centered at mu
/// for the symmetric families. Gamma is not centered: its transform is of h itself.
inline ComplexFT seed_ft_centered(const SeedSpec& s, double xi) {
  using detail::kPi;
  if (!std::isfinite(xi)) throw DomainError("transform argument must be finite");
  if (xi == 0.0 && s.has_closed_form_ft()) return {1.0, 0.0};
  switch (s.family()) {
    case Family::Gauss: {
      const double t = s.sigma() * xi;
      return {std::exp(-2.0 * kPi * kPi * t * t), 0.0};
    }
    case Family::Cauchy: return {std::exp(-2.0 * kPi * s.sigma() * std::abs(xi)), 0.0};
    case Family::Laplace: {
      const double t = 2.0 * kPi * s.sigma() * xi;
      return {1.0 / (1.0 + t * t), 0.0};
    }
    case Family::Logistic: {
      const double x = std::abs(2.0 * kPi * kPi * s.sigma() * xi);
      if (x < 1e-8) return {1.0 - x * x / 6.0, 0.0};
      if (x > 350.0) return {0.0, 0.0};
      return {x / std::sinh(x), 0.0};
    }
    case Family::Gamma: {
      // Negative xi gives the conjugate.
      const GammaPolar z = gamma_polar(s.beta(), std::abs(xi));
      const double mag = std::pow(z.r, -s.alpha());
      const double arg = -s.alpha() * z.phi;
      return {mag * std::cos(arg), (xi < 0.0 ? -1.0 : 1.0) * mag * std::sin(arg)};
    }
    case Family::Step:
    case Family::PiecewiseLinear: break;
  }
  throw UnsupportedOperation(std::string("no closed-form transform for ") +
                             std::string(family_name(s.family())) + " seed");
}

/// Transform of h itself: the centered transform times the location phase exp(-2 pi i xi mu).
inline std::complex<double> seed_ft(const SeedSpec& s, double xi) {
  const std::complex<double> base = seed_ft_centered(s, xi).value();
  if (!s.is_symmetric() || s.mu() == 0.0) return base;
  return base * std::polar(1.0, -2.0 * detail::kPi * xi * s.mu());
}

}  // namespace benford
