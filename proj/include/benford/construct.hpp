#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "core.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "seeds.hpp"
#include "wrapped_pdf.hpp"

namespace benford {

/// A base-b Benford variable built from the seed H by the (H, b) -> f recipe.
struct BenfordSpec {
  SeedSpec seed;
  Base base;

  std::string describe() const {
    char buf[48];
    std::snprintf(buf, sizeof buf, ",b=%.17g", base.value());
    return seed.describe() + buf;
  }
};

/// f(x) = [H(v) - H(v - 1)] / (x ln b) with v = log_b x.
inline double benford_pdf(const BenfordSpec& spec, double x) {
  if (!(std::isfinite(x) && x > 0.0)) throw DomainError("benford_pdf requires finite x > 0");
  const double lb = spec.base.ln();
  const double v = std::log(x) / lb;
  return seed_interval_mass(spec.seed, v - 1.0, v) / (lb * x);
}

/// Density of log_c X straight from the seed: rho [H(rho w) - H(rho w - 1)].
inline double gtilde(const BenfordSpec& spec, Base c, double w) {
  if (!std::isfinite(w)) throw DomainError("gtilde requires finite w");
  const double rho = log_constants(spec.base, c).rho;
  const double v = rho * w;
  return rho * seed_interval_mass(spec.seed, v - 1.0, v);
}

/// Same density by change of variables from f: ln(c) f(c^w) c^w.
inline double gtilde_via_pdf(const BenfordSpec& spec, Base c, double w) {
  const double x = std::pow(c.value(), w);
  return c.ln() * benford_pdf(spec, x) * x;
}

/// Non-smooth points of gtilde in w.
inline std::vector<double> gtilde_breakpoints(const SeedSpec& seed, double rho) {
  std::vector<double> out;
  for (double k : seed_breakpoints(seed)) {
    out.push_back(k / rho);
    out.push_back((k + 1.0) / rho);
  }
  return out;
}

/// w-interval carrying gtilde's mass; `capped` when heavy tails extend beyond it.
inline SeedSupport gtilde_support(const SeedSpec& seed, double rho) {
  const SeedSupport v = seed_support(seed);
  return {v.lo / rho, (v.hi + 1.0) / rho, v.capped};
}

inline constexpr std::int64_t kAutoKMin = 4;
inline constexpr std::int64_t kAutoKMax = 10000;
inline constexpr double kAutoKTailMass = 1e-12;

struct AutoK {
  std::int64_t k;
  bool clamped;  // the tail bound was not reached within kAutoKMax
};

/// Smallest K with H(-K r) + 1 - H(K r - 1) < 1e-12, r = min(rho, 1), clamped to [4, 1e4].
inline AutoK auto_k(const SeedSpec& seed, double rho) {
  const double r = std::min(rho, 1.0);
  auto tail = [&](std::int64_t k) {
    const double x = static_cast<double>(k) * r;
    return seed_cdf(seed, -x) + seed_survival(seed, x - 1.0);
  };
  if (tail(kAutoKMin) < kAutoKTailMass) return {kAutoKMin, false};
  if (tail(kAutoKMax) >= kAutoKTailMass) return {kAutoKMax, true};
  std::int64_t lo = kAutoKMin;  // tail(lo) too big
  std::int64_t hi = kAutoKMax;  // tail(hi) small enough
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (tail(mid) < kAutoKTailMass ? hi : lo) = mid;
  }
  return {hi, false};
}

namespace detail {
// Integral of gtilde over [a, inf) equals the integral of 1 - H over [rho a - 1, rho a].
inline double gtilde_upper_mass(const SeedSpec& seed, double rho, double a) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  return GL::integrate([&](double t) { return seed_survival(seed, t); }, rho * a - 1.0, rho * a);
}
inline double gtilde_lower_mass(const SeedSpec& seed, double rho, double b) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  return GL::integrate([&](double t) { return seed_cdf(seed, t); }, rho * b - 1.0, rho * b);
}
}  // namespace detail

/// g(u) = sum_k gtilde(k + u) on u_j = j / grid_size, k from -K-1 to K.
/// With k_range unset, K is chosen by auto_k; if that clamps (heavy tails) the
/// omitted terms are replaced by their midpoint-rule integrals.
inline WrappedPdf g_direct(const BenfordSpec& spec, Base c, std::size_t grid_size,
                           std::optional<std::int64_t> k_range = std::nullopt) {
  if (grid_size < 2) throw DomainError("g_direct requires grid_size >= 2");
  if (k_range && *k_range < 1) throw DomainError("k_range must be positive");
  double rho = log_constants(spec.base, c).rho;
  // at an integral root c = b^{1/m} use rho = 1/m exactly, so jumps of a step seed land on grid points consistently
  const double m = std::round(1.0 / rho);
  if (m >= 1.0 && std::abs(1.0 / rho - m) <= 1e-12 * m) rho = 1.0 / m;
  const AutoK ak = k_range ? AutoK{*k_range, false} : auto_k(spec.seed, rho);
  const std::int64_t K = ak.k;
  const bool tail_correct = !k_range && ak.clamped;

  WrappedPdf out;
  out.u = WrappedPdf::uniform_grid(grid_size);
  out.g.assign(grid_size, 0.0);
  out.provenance = Provenance::DirectSum;
  out.params = spec.describe() + ",c=" + std::to_string(c.value()) + ",K=" + std::to_string(K) +
               (tail_correct ? "+tail" : "");

  parallel_for(grid_size, [&](std::size_t j) {
    const double u = out.u[j];
    double s = 0.0;
    for (std::int64_t k = -K - 1; k <= K; ++k) {
      const double v = rho * (static_cast<double>(k) + u);
      s += rho * seed_interval_mass(spec.seed, v - 1.0, v);
    }
    if (tail_correct) {
      s += detail::gtilde_upper_mass(spec.seed, rho, static_cast<double>(K) + 0.5 + u);
      s += detail::gtilde_lower_mass(spec.seed, rho, -static_cast<double>(K) - 1.5 + u);
    }
    out.g[j] = s;
  });
  return out;
}

/// Adaptive-quadrature value of the integral of gtilde over the real line.
inline double check_unit_mass(const BenfordSpec& spec, Base c) {
  const double rho = log_constants(spec.base, c).rho;
  if (spec.seed.family() == Family::Step) return 1.0;  // rectangle: height rho, width 1/rho
  const auto f = [&](double w) { return gtilde(spec, c, w); };
  const SeedSupport w = gtilde_support(spec.seed, rho);
  const auto breaks = gtilde_breakpoints(spec.seed, rho);
  quad::Estimate total = quad::integrate(f, w.lo, w.hi, breaks);
  if (w.capped) {
    const auto up = quad::integrate_half_line([&](double t) { return f(w.hi + t); });
    const auto dn = quad::integrate_half_line([&](double t) { return f(w.lo - t); });
    total.value += up.value + dn.value;
    total.error += up.error + dn.error;
  }
  if (!(total.error <= 1e-9) || !std::isfinite(total.value))
    throw QuadratureError("unit-mass quadrature did not converge", total.value, total.error);
  return total.value;
}

}  // namespace benford
