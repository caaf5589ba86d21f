#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "construct.hpp"
#include "core.hpp"
#include "fourier.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "seeds.hpp"

namespace benford {

/// X = X_a * X_b with X_a base-a Benford from seed_a and X_b base-b Benford
/// from seed_b, independent.
struct DualSpec {
  SeedSpec seed_a;
  Base base_a;
  SeedSpec seed_b;
  Base base_b;

  BenfordSpec factor_a() const { return {seed_a, base_a}; }
  BenfordSpec factor_b() const { return {seed_b, base_b}; }
  bool both_step() const { return seed_a.family() == Family::Step && seed_b.family() == Family::Step; }

  std::string describe() const { return "[" + factor_a().describe() + "]x[" + factor_b().describe() + "]"; }

  /// Set when one base is an integral root of the other (m <= 64), in which
  /// case the product is not a genuinely dual-base variable.
  std::optional<std::string> integral_root_warning() const {
    const double r = base_a.ln() / base_b.ln();
    for (int m = 1; m <= 64; ++m) {
      if (std::abs(r - m) <= 1e-12 * m || std::abs(r - 1.0 / m) <= 1e-12)
        return "bases " + std::to_string(base_a.value()) + " and " + std::to_string(base_b.value()) +
               " are integral roots of each other (m=" + std::to_string(m) + ")";
    }
    return std::nullopt;
  }
};

struct DualRho {
  double rho_a;  // ln c / ln a
  double rho_b;  // ln c / ln b
};

inline DualRho dual_rho(const DualSpec& d, Base c) {
  return {log_constants(d.base_a, c).rho, log_constants(d.base_b, c).rho};
}

/// Density of log_c(X_a X_b) for two step seeds: the convolution of two
/// rectangles, normalized so rho_a >= rho_b (a <= b).
struct TrapezoidPdf {
  double rho_a;
  double rho_b;

  static TrapezoidPdf from_bases(Base a, Base b, Base c) {
    double ra = log_constants(a, c).rho;
    double rb = log_constants(b, c).rho;
    if (ra < rb) std::swap(ra, rb);
    return {ra, rb};
  }

  std::array<double, 4> vertices() const {
    return {0.0, 1.0 / rho_a, 1.0 / rho_b, 1.0 / rho_a + 1.0 / rho_b};
  }

  double operator()(double w) const {
    const auto v = vertices();
    if (w < 0.0 || w >= v[3]) return 0.0;
    if (w < v[1]) return rho_a * rho_b * w;
    if (w < v[2]) return rho_b;
    return std::max(0.0, rho_a + rho_b - rho_a * rho_b * w);
  }

  /// Closed-form area: two triangles of rho_b / (2 rho_a) and a plateau of 1 - rho_b / rho_a.
  double area() const { return rho_b / rho_a + (1.0 - rho_b / rho_a); }
};

inline TrapezoidPdf dual_trapezoid(const DualSpec& d, Base c) {
  if (!d.both_step()) throw UnsupportedOperation("trapezoid density requires two step seeds");
  return TrapezoidPdf::from_bases(d.base_a, d.base_b, c);
}

inline double trapezoid_gtilde(const DualSpec& d, Base c, double w) {
  if (!std::isfinite(w)) throw DomainError("trapezoid_gtilde requires finite w");
  return dual_trapezoid(d, c)(w);
}

/// Wrapped density of the step/step product: finite sum of trapezoid translates.
inline WrappedPdf dual_g_direct(const DualSpec& d, Base c, std::size_t grid_size) {
  if (grid_size < 2) throw DomainError("dual_g_direct requires grid_size >= 2");
  const TrapezoidPdf t = dual_trapezoid(d, c);
  const auto last = static_cast<std::int64_t>(std::ceil(t.vertices()[3]));
  WrappedPdf out;
  out.u = WrappedPdf::uniform_grid(grid_size);
  out.g.assign(grid_size, 0.0);
  out.provenance = Provenance::DirectSum;
  out.params = d.describe() + ",c=" + std::to_string(c.value());
  for (std::size_t j = 0; j < grid_size; ++j) {
    double s = 0.0;
    for (std::int64_t k = 0; k <= last; ++k) s += t(static_cast<double>(k) + out.u[j]);
    out.g[j] = s;
  }
  return out;
}

/// Density of X = X_a X_b at x.
/// Step/step uses the closed three-part form; otherwise the product integral
/// f(x) = integral of f_b(xi) f_a(x / xi) / xi dxi is evaluated in log_b(xi).
inline double product_pdf(const DualSpec& d, double x) {
  if (!(std::isfinite(x) && x > 0.0)) throw DomainError("product_pdf requires finite x > 0");
  if (d.both_step()) {
    const double a = std::min(d.base_a.value(), d.base_b.value());
    const double b = std::max(d.base_a.value(), d.base_b.value());
    const double lam = 1.0 / (std::log(a) * std::log(b));
    if (x < 1.0 || x >= a * b) return 0.0;
    if (x < a) return lam / x * std::log(x);
    if (x < b) return lam / x * std::log(a);
    return lam / x * std::log(a * b / x);
  }

  const double la = d.base_a.ln();
  const double lb = d.base_b.ln();
  const double lx = std::log(x);
  // v = log_b(xi); the a-factor sees t = log_a(x / xi) = (ln x - v ln b) / ln a
  const auto integrand = [&](double v) {
    const double t = (lx - v * lb) / la;
    return seed_interval_mass(d.seed_b, v - 1.0, v) * seed_interval_mass(d.seed_a, t - 1.0, t) / (x * la);
  };
  const auto v_of_t = [&](double t) { return (lx - t * la) / lb; };

  const SeedSupport sb = seed_support(d.seed_b);
  const SeedSupport sa = seed_support(d.seed_a);
  const double b_lo = sb.lo, b_hi = sb.hi + 1.0;
  const double a_lo = v_of_t(sa.hi + 1.0), a_hi = v_of_t(sa.lo);
  std::vector<double> breaks;
  for (double k : seed_breakpoints(d.seed_b)) breaks.insert(breaks.end(), {k, k + 1.0});
  for (double k : seed_breakpoints(d.seed_a)) breaks.insert(breaks.end(), {v_of_t(k), v_of_t(k + 1.0)});

  quad::Estimate total;
  if (sa.capped || sb.capped) {
    const double lo = std::min(b_lo, a_lo), hi = std::max(b_hi, a_hi);
    total = quad::integrate(integrand, lo, hi, breaks);
    const auto up = quad::integrate_half_line([&](double s) { return integrand(hi + s); });
    const auto dn = quad::integrate_half_line([&](double s) { return integrand(lo - s); });
    total.value += up.value + dn.value;
    total.error += up.error + dn.error;
  } else {
    const double lo = std::max(b_lo, a_lo), hi = std::min(b_hi, a_hi);
    if (hi <= lo) return 0.0;
    total = quad::integrate(integrand, lo, hi, breaks);
  }
  if (!(total.error <= 1e-9 * std::max(1.0, std::abs(total.value))) || !std::isfinite(total.value))
    throw QuadratureError("product density quadrature did not converge", total.value, total.error);
  return total.value;
}

/// ghat of one factor: exp(-i pi n / rho) sinc(n / rho) for a step seed,
/// the closed form through hhat otherwise.
inline std::complex<double> factor_coeff(const SeedSpec& seed, Base base, Base c, std::int64_t n) {
  if (n == 0) return {1.0, 0.0};
  if (seed.family() == Family::Step) {
    const double rho_inv = log_constants(base, c).rho_inv();
    return half_turn_phase(rho_inv, n) * sinc_multiple(rho_inv, n);
  }
  return coeff_general(BenfordSpec{seed, base}, c, n).value;
}

/// Convolution theorem: ghat(n) = ghat_a(n) ghat_b(n).
inline ComplexCoefficient dual_coeff(const DualSpec& d, Base c, std::int64_t n) {
  if (n == 0) throw DomainError("dual_coeff requires n != 0");
  return {n, factor_coeff(d.seed_a, d.base_a, c, n) * factor_coeff(d.seed_b, d.base_b, c, n)};
}

namespace detail {
// Real, even seed transform (so that B_{-n} = B_n): steps (transform 1) and
// symmetric seeds centered at 0.
inline std::optional<double> real_even_ft(const SeedSpec& s, double xi) {
  if (s.family() == Family::Step) return 1.0;
  if (s.is_symmetric() && s.mu() == 0.0) return seed_ft_centered(s, xi).re;
  return std::nullopt;
}
}  // namespace detail

/// Constant-phase series of the product when B_{-n} = B_n:
/// A_n = 8 B_n sin(pi n / rho_a) sin(pi n / rho_b), theta = (1/rho_a + 1/rho_b) / 2,
/// B_n = (rho_a rho_b / 4 pi^2 n^2) hhat_a(n / rho_a) hhat_b(n / rho_b).
/// Two step seeds reduce to A_n = 2 sinc(n / rho_a) sinc(n / rho_b).
inline FourierSeries dual_series(const DualSpec& d, Base c, int n_max = kDefaultNMax) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  if (!detail::real_even_ft(d.seed_a, 1.0) || !detail::real_even_ft(d.seed_b, 1.0))
    throw UnsupportedOperation("dual_series requires real, even seed transforms (B_-n = B_n); use dual_coeff");
  const auto [ra, rb] = dual_rho(d, c);
  const double ia = 1.0 / ra, ib = 1.0 / rb;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  FourierSeries out;
  out.n_max = n_max;
  out.family_tag = d.describe();
  out.theta_constant = true;
  const double theta = frac(0.5 * (ia + ib));
  const auto bn = [&](int n) {
    return ra * rb / (4.0 * pi2 * n * n) * *detail::real_even_ft(d.seed_a, ia * n) *
           *detail::real_even_ft(d.seed_b, ib * n);
  };
  for (int n = 1; n <= n_max; ++n) {
    const double amp = d.both_step() ? 2.0 * sinc_multiple(ia, n) * sinc_multiple(ib, n)
                                     : 8.0 * bn(n) * sin_pi_multiple(ia, n) * sin_pi_multiple(ib, n);
    out.terms.push_back({n, amp, theta});
  }
  double power = 2.0;
  bool exponential = false;
  for (const SeedSpec* s : {&d.seed_a, &d.seed_b}) {
    if (s->family() == Family::Laplace) power += 2.0;
    if (s->family() == Family::Gauss || s->family() == Family::Cauchy || s->family() == Family::Logistic)
      exponential = true;
  }
  out.tail_bound = detail::envelope_tail([&](int n) { return 8.0 * std::abs(bn(n)); }, n_max,
                                         exponential ? 0.0 : power);
  return out;
}

/// Series for any supported factor pair, from the complex product coefficients.
inline FourierSeries dual_series_from_coefficients(const DualSpec& d, Base c, int n_max = kDefaultNMax) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  std::vector<ComplexCoefficient> cs;
  for (int n = 1; n <= n_max; ++n) cs.push_back(dual_coeff(d, c, n));
  return series_from_coefficients(cs, d.describe());
}

struct DualSweepRow {
  double c;
  double rho_inv;  // rho_a^{-1} + rho_b^{-1}: the width of the product's log_c support for step seeds
  double A1;
  double sup_norm;
  double rho_a_inv;
  double rho_b_inv;
};

/// dual_series analogue of sweep_c.
inline std::vector<DualSweepRow> dual_sweep_c(const DualSpec& d, Base c_min, Base c_max, std::size_t steps,
                                              int n_max = kDefaultNMax, std::size_t grid_size = 1024) {
  if (!(c_min.value() < c_max.value())) throw DomainError("dual_sweep_c requires c_min < c_max");
  if (steps < 1) throw DomainError("dual_sweep_c requires steps >= 1");
  std::vector<DualSweepRow> rows(steps);
  const double lo = c_min.value();
  const double span = c_max.value() - lo;
  parallel_for(steps, [&](std::size_t i) {
    const double cv = steps == 1 ? lo : lo + span * static_cast<double>(i) / static_cast<double>(steps - 1);
    const Base c(cv);
    const FourierSeries s = dual_series(d, c, n_max);
    double sup = 0.0;
    for (std::size_t j = 0; j < grid_size; ++j)
      sup = std::max(sup, std::abs(s.evaluate(static_cast<double>(j) / static_cast<double>(grid_size)) - 1.0));
    const auto [ra, rb] = dual_rho(d, c);
    rows[i] = {cv, 1.0 / ra + 1.0 / rb, s.terms.front().A, sup, 1.0 / ra, 1.0 / rb};
  });
  return rows;
}

/// H_a*: slope ln(a)/ln(b) on [0, ln(b)/ln(a)). With base a it reproduces the
/// step/step product density of bases a < b.
inline SeedSpec hstar_seed(Base a, Base b) {
  if (!(a.value() < b.value())) throw ArgumentOrderError("hstar_seed requires a < b");
  return SeedSpec::piecewise_linear(a.ln() / b.ln(), b.ln() / a.ln());
}

/// H_b*: slope ln(b)/ln(a) on [0, ln(a)/ln(b)); the same product density with base b.
inline SeedSpec hstar_seed_b(Base a, Base b) {
  if (!(a.value() < b.value())) throw ArgumentOrderError("hstar_seed_b requires a < b");
  return SeedSpec::piecewise_linear(b.ln() / a.ln(), a.ln() / b.ln());
}

}  // namespace benford
