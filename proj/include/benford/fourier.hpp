#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>

#include "construct.hpp"
#include "core.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "seeds.hpp"
#include "wrapped_pdf.hpp"

namespace benford {

inline constexpr int kDefaultNMax = 32;
inline constexpr double kIntegerSnap = 1e-12;

struct ComplexCoefficient {
  std::int64_t n = 0;
  std::complex<double> value;
};

struct SeriesTerm {
  int n;
  double A;
  double theta;
};

/// g(u) = 1 + sum_n A_n cos(2 pi n (u - theta_n)), with theta_n reported mod 1.
struct FourierSeries {
  std::vector<SeriesTerm> terms;
  int n_max = 0;
  std::string family_tag;
  bool theta_constant = true;
  /// Envelope estimate of sum_{n > n_max} |A_n|.
  double tail_bound = 0.0;

  double evaluate(double u) const {
    double g = 1.0;
    for (const auto& t : terms) g += t.A * std::cos(2.0 * std::numbers::pi * t.n * (u - t.theta));
    return g;
  }

  double amplitude_sum() const {
    double s = 0.0;
    for (const auto& t : terms) s += std::abs(t.A);
    return s;
  }

  /// (a_n, b_n) of g = 1 + sum a_n cos(2 pi n u) + b_n sin(2 pi n u).
  static std::pair<double, double> rectangular(const SeriesTerm& t) {
    const double arg = 2.0 * static_cast<double>(t.n) * t.theta;
    return {t.A * boost::math::cos_pi(arg), t.A * boost::math::sin_pi(arg)};
  }
};

/// sin(pi n x) by reducing x = m + f and applying the parity (-1)^{n m};
/// x within 1e-12 of an integer gives exactly 0.
inline double sin_pi_multiple(double x, std::int64_t n) {
  const double m = std::floor(x);
  const double f = x - m;
  if (f < kIntegerSnap || 1.0 - f < kIntegerSnap) return 0.0;
  const double s = boost::math::sin_pi(static_cast<double>(n) * f);
  const bool odd = std::fmod(std::abs(static_cast<double>(n) * m), 2.0) == 1.0;
  return odd ? -s : s;
}

/// Normalized sinc(n x) = sin(pi n x) / (pi n x), with the same integer snapping.
inline double sinc_multiple(double x, std::int64_t n) {
  const double arg = static_cast<double>(n) * x;
  if (arg == 0.0) return 1.0;
  return sin_pi_multiple(x, n) / (std::numbers::pi * arg);
}

/// exp(-i pi n x).
inline std::complex<double> half_turn_phase(double x, std::int64_t n) {
  const double t = static_cast<double>(n) * x;
  return {boost::math::cos_pi(t), -boost::math::sin_pi(t)};
}

/// ghat(n) = integral of exp(-2 pi i n w) gtilde(w) dw by adaptive quadrature.
/// Heavy tails beyond the core interval are integrated with Ooura's rules.
inline ComplexCoefficient coeff_quadrature(const BenfordSpec& spec, Base c, std::int64_t n) {
  if (n == 0) return {0, {1.0, 0.0}};
  const double rho = log_constants(spec.base, c).rho;
  const double omega = 2.0 * std::numbers::pi * static_cast<double>(n);
  const auto gt = [&](double w) { return gtilde(spec, c, w); };
  const auto integrand = [&](double w) { return std::polar(gt(w), -omega * w); };

  const SeedSupport w = gtilde_support(spec.seed, rho);
  const auto breaks = gtilde_breakpoints(spec.seed, rho);
  quad::ComplexEstimate total =
      quad::integrate_complex(integrand, w.lo, w.hi, breaks, 1.0 / std::abs(static_cast<double>(n)));
  if (w.capped) {
    const auto up = quad::fourier_half_line([&](double t) { return gt(w.hi + t); }, omega);
    const auto dn = quad::fourier_half_line([&](double t) { return gt(w.lo - t); }, -omega);
    total.value += std::polar(1.0, -omega * w.hi) * up.value + std::polar(1.0, -omega * w.lo) * dn.value;
    total.error += up.error + dn.error;
  }
  if (!(total.error <= 1e-8) || !std::isfinite(total.value.real()) || !std::isfinite(total.value.imag()))
    throw QuadratureError("Fourier coefficient quadrature did not converge", std::abs(total.value),
                          total.error);
  return {n, total.value};
}

/// Closed form through the seed transform:
/// ghat(n) = (rho / pi n) sin(pi n / rho) exp(-i pi n / rho) hhat(n / rho).
inline ComplexCoefficient coeff_general(const BenfordSpec& spec, Base c, std::int64_t n) {
  if (n == 0) throw DomainError("coeff_general requires n != 0");
  if (!spec.seed.has_closed_form_ft())
    throw UnsupportedOperation(std::string("coeff_general: no closed-form transform for ") +
                               std::string(family_name(spec.seed.family())));
  const auto k = log_constants(spec.base, c);
  const double rho_inv = k.rho_inv();
  const double s = sin_pi_multiple(rho_inv, n);
  if (s == 0.0) return {n, {0.0, 0.0}};
  const double scale = k.rho / (std::numbers::pi * static_cast<double>(n)) * s;
  return {n, scale * half_turn_phase(rho_inv, n) * seed_ft(spec.seed, rho_inv * static_cast<double>(n))};
}

namespace detail {
/// Sum of envelope(n) for n > n_max. Exponential envelopes are summed until
/// they vanish; algebraic ones (decay n^-p) get an integral remainder.
template <class Envelope>
double envelope_tail(const Envelope& envelope, int n_max, double power = 0.0) {
  constexpr int kTerms = 20000;
  double s = 0.0;
  double last = 0.0;
  for (int n = n_max + 1; n <= n_max + kTerms; ++n) {
    last = envelope(n);
    s += last;
    if (power == 0.0 && last < 1e-300) return s;
  }
  if (power > 1.0) s += last * static_cast<double>(n_max + kTerms) / (power - 1.0);
  return s;
}

inline void require_n_max(int n_max) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
}
}  // namespace detail

/// Amplitude/phase series for a seed whose density is symmetric about mu:
/// theta = rho^{-1}(1/2 + mu), A_n = (2 rho / pi n) hhat0(n / rho) sin(pi n / rho).
inline FourierSeries series_symmetric(const BenfordSpec& spec, Base c, int n_max = kDefaultNMax) {
  if (!spec.seed.is_symmetric())
    throw UnsupportedOperation("series_symmetric requires a symmetric seed family");
  detail::require_n_max(n_max);
  const auto k = log_constants(spec.base, c);
  const double rho_inv = k.rho_inv();
  FourierSeries out;
  out.n_max = n_max;
  out.family_tag = spec.describe();
  out.theta_constant = true;
  const double theta = frac(rho_inv * (0.5 + spec.seed.mu()));
  const auto hhat = [&](int n) { return seed_ft_centered(spec.seed, rho_inv * n).re; };
  for (int n = 1; n <= n_max; ++n)
    out.terms.push_back({n, 2.0 * k.rho / (std::numbers::pi * n) * hhat(n) * sin_pi_multiple(rho_inv, n), theta});
  const double power = spec.seed.family() == Family::Laplace ? 3.0 : 0.0;
  out.tail_bound = detail::envelope_tail(
      [&](int n) { return 2.0 * k.rho / (std::numbers::pi * n) * std::abs(hhat(n)); }, n_max, power);
  return out;
}

/// Gamma seed: A_n = (2 rho / (pi n r_n^alpha)) sin(pi n / rho),
/// theta_n = rho^{-1}/2 + alpha phi_n / (2 pi n), with r_n, phi_n the polar form of 1 + 2 pi i n beta / rho.
inline FourierSeries series_gamma(const BenfordSpec& spec, Base c, int n_max = kDefaultNMax) {
  if (spec.seed.family() != Family::Gamma) throw UnsupportedOperation("series_gamma requires a gamma seed");
  detail::require_n_max(n_max);
  const auto k = log_constants(spec.base, c);
  const double rho_inv = k.rho_inv();
  const double alpha = spec.seed.alpha();
  FourierSeries out;
  out.n_max = n_max;
  out.family_tag = spec.describe();
  out.theta_constant = false;
  for (int n = 1; n <= n_max; ++n) {
    const GammaPolar z = gamma_polar(spec.seed.beta(), rho_inv * n);
    const double amp = 2.0 * k.rho / (std::numbers::pi * n * std::pow(z.r, alpha)) * sin_pi_multiple(rho_inv, n);
    const double theta = frac(0.5 * rho_inv + alpha * z.phi / (2.0 * std::numbers::pi * n));
    out.terms.push_back({n, amp, theta});
  }
  out.tail_bound = detail::envelope_tail(
      [&](int n) {
        const GammaPolar z = gamma_polar(spec.seed.beta(), rho_inv * n);
        return 2.0 * k.rho / (std::numbers::pi * n * std::pow(z.r, alpha));
      },
      n_max, 1.0 + alpha);
  return out;
}

/// Step seed: gtilde is a rectangle, A_n = 2 sinc(n / rho), theta = rho^{-1}/2.
inline FourierSeries series_step(const BenfordSpec& spec, Base c, int n_max = kDefaultNMax) {
  if (spec.seed.family() != Family::Step) throw UnsupportedOperation("series_step requires a step seed");
  detail::require_n_max(n_max);
  const double rho_inv = log_constants(spec.base, c).rho_inv();
  FourierSeries out;
  out.n_max = n_max;
  out.family_tag = spec.describe();
  const double theta = frac(0.5 * rho_inv);
  for (int n = 1; n <= n_max; ++n) out.terms.push_back({n, 2.0 * sinc_multiple(rho_inv, n), theta});
  // 1/n envelope: the tail sum diverges, so this is the partial sum over the next 20000 terms
  out.tail_bound = detail::envelope_tail(
      [&](int n) { return 2.0 / (std::numbers::pi * n * rho_inv); }, n_max, 1.0);
  return out;
}

/// Piecewise-linear seed (a uniform density on [0, width)): symmetric about
/// width/2 with centered transform sinc(width xi).
inline FourierSeries series_piecewise_linear(const BenfordSpec& spec, Base c, int n_max = kDefaultNMax) {
  if (spec.seed.family() != Family::PiecewiseLinear)
    throw UnsupportedOperation("series_piecewise_linear requires a piecewise-linear seed");
  detail::require_n_max(n_max);
  const auto k = log_constants(spec.base, c);
  const double rho_inv = k.rho_inv();
  const double width = spec.seed.width();
  FourierSeries out;
  out.n_max = n_max;
  out.family_tag = spec.describe();
  const double theta = frac(rho_inv * (0.5 + 0.5 * width));
  for (int n = 1; n <= n_max; ++n) {
    const double amp = 2.0 * k.rho / (std::numbers::pi * n) * sinc_multiple(width * rho_inv, n) *
                       sin_pi_multiple(rho_inv, n);
    out.terms.push_back({n, amp, theta});
  }
  out.tail_bound = detail::envelope_tail(
      [&](int n) { return 2.0 * k.rho / (std::numbers::pi * n) / (std::numbers::pi * n * width * rho_inv); }, n_max,
      2.0);
  return out;
}

/// Closed-form series for any seed family.
inline FourierSeries series_for(const BenfordSpec& spec, Base c, int n_max = kDefaultNMax) {
  switch (spec.seed.family()) {
    case Family::Gamma: return series_gamma(spec, c, n_max);
    case Family::Step: return series_step(spec, c, n_max);
    case Family::PiecewiseLinear: return series_piecewise_linear(spec, c, n_max);
    default: return series_symmetric(spec, c, n_max);
  }
}

/// Polar form of complex coefficients ghat(1..N): A_n = 2|ghat(n)|,
/// 2 pi n theta_n = atan2(b_n, a_n) with a_n = 2 Re ghat(n), b_n = -2 Im ghat(n).
inline FourierSeries series_from_coefficients(const std::vector<ComplexCoefficient>& coeffs, std::string tag) {
  FourierSeries out;
  out.family_tag = std::move(tag);
  out.theta_constant = false;
  for (const auto& cf : coeffs) {
    if (cf.n <= 0) continue;
    const double a = 2.0 * cf.value.real();
    const double b = -2.0 * cf.value.imag();
    const double amp = std::hypot(a, b);
    const double theta = amp == 0.0 ? 0.0 : frac(std::atan2(b, a) / (2.0 * std::numbers::pi * static_cast<double>(cf.n)));
    out.terms.push_back({static_cast<int>(cf.n), amp, theta});
    out.n_max = std::max(out.n_max, static_cast<int>(cf.n));
  }
  return out;
}

/// Evaluate the series on u_j = j / grid_size.
inline WrappedPdf series_eval(const FourierSeries& series, std::size_t grid_size) {
  if (grid_size < 1) throw DomainError("series_eval requires grid_size >= 1");
  WrappedPdf out;
  out.u = WrappedPdf::uniform_grid(grid_size);
  out.g.assign(grid_size, 1.0);
  out.provenance = Provenance::FourierSeries;
  out.params = series.family_tag + ",n_max=" + std::to_string(series.n_max);
  out.amplitude_sum = series.amplitude_sum();
  out.tail_bound = series.tail_bound;
  parallel_for(grid_size, [&](std::size_t j) { out.g[j] = series.evaluate(out.u[j]); });
  return out;
}

/// Probability of each of `bins` equal bins of [0, 1) under the series.
inline std::vector<double> series_bin_probabilities(const FourierSeries& series, std::size_t bins) {
  std::vector<double> p(bins);
  const double width = 1.0 / static_cast<double>(bins);
  for (std::size_t j = 0; j < bins; ++j) {
    const double lo = static_cast<double>(j) * width;
    const double hi = lo + width;
    double s = width;
    for (const auto& t : series.terms) {
      const double k = 2.0 * std::numbers::pi * t.n;
      s += t.A * (std::sin(k * (hi - t.theta)) - std::sin(k * (lo - t.theta))) / k;
    }
    p[j] = s;
  }
  return p;
}

struct SweepRow {
  double c;
  double rho_inv;
  double A1;
  double sup_norm;
};

/// A_1 and the series sup-norm deviation at `steps` evenly spaced bases in [c_min, c_max].
inline std::vector<SweepRow> sweep_c(const BenfordSpec& spec, Base c_min, Base c_max, std::size_t steps,
                                     int n_max = kDefaultNMax, std::size_t grid_size = 1024) {
  if (!(c_min.value() < c_max.value())) throw DomainError("sweep_c requires c_min < c_max");
  if (steps < 1) throw DomainError("sweep_c requires steps >= 1");
  std::vector<SweepRow> rows(steps);
  const double lo = c_min.value();
  const double span = c_max.value() - lo;
  parallel_for(steps, [&](std::size_t i) {
    const double cv = steps == 1 ? lo : lo + span * static_cast<double>(i) / static_cast<double>(steps - 1);
    const Base c(cv);
    const FourierSeries s = series_for(spec, c, n_max);
    double sup = 0.0;
    for (std::size_t j = 0; j < grid_size; ++j)
      sup = std::max(sup, std::abs(s.evaluate(static_cast<double>(j) / static_cast<double>(grid_size)) - 1.0));
    rows[i] = {cv, log_constants(spec.base, c).rho_inv(), s.terms.front().A, sup};
  });
  return rows;
}

/// log_c of a log-normal(mu, sigma^2) variable is normal(Lambda_c mu, (Lambda_c sigma)^2), so
/// A_n = 2 exp(-2 pi^2 n^2 sigma_bar^2) and theta = <Lambda_c mu>.
inline FourierSeries lognormal_series(double mu, double sigma, Base c, int n_max = kDefaultNMax) {
  if (!(std::isfinite(sigma) && sigma > 0.0)) throw DomainError("lognormal_series requires sigma > 0");
  if (!std::isfinite(mu)) throw DomainError("lognormal_series requires finite mu");
  detail::require_n_max(n_max);
  const double lc = 1.0 / c.ln();
  const double sbar = lc * sigma;
  const double theta = frac(lc * mu);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  FourierSeries out;
  out.n_max = n_max;
  out.family_tag = "lognormal(mu=" + std::to_string(mu) + ",sigma=" + std::to_string(sigma) + ")";
  const auto amp = [&](int n) { return 2.0 * std::exp(-2.0 * pi2 * n * n * sbar * sbar); };
  for (int n = 1; n <= n_max; ++n) out.terms.push_back({n, amp(n), theta});
  out.tail_bound = detail::envelope_tail(amp, n_max);
  return out;
}

struct TrigIdentityReport {
  std::size_t trials = 0;
  double max_sum_identity = 0.0;     // cos/sin four-term identity
  double max_half_angle = 0.0;       // cos(d+e)-cos(d-e), sin(d+e)-sin(d-e)
  double max_q = 0.0;                // complex Q_n vs 2 cos sin form
  double max_q_phase = 0.0;          // Q_n with an extra phase alpha*phi
  double max_product = 0.0;          // two-factor product reduction
  double max_discrepancy() const {
    return std::max({max_sum_identity, max_half_angle, max_q, max_q_phase, max_product});
  }
  bool pass(double tol = 1e-12) const { return max_discrepancy() <= tol; }
};

/// Random-trial check of the trigonometric reductions that turn complex
/// coefficient pairs into real amplitude/phase terms.
inline TrigIdentityReport verify_trig_identities(std::size_t trials, std::uint64_t rng_seed) {
  if (trials < 1) throw DomainError("verify_trig_identities requires trials >= 1");
  using cd = std::complex<double>;
  constexpr double pi = std::numbers::pi;
  const cd I(0.0, 1.0);
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> angle(-2.0 * pi, 2.0 * pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> rinv(0.05, 8.0);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_int_distribution<int> nd(1, 8);

  TrigIdentityReport r;
  r.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const double a = angle(rng), b = angle(rng), g = angle(rng);
    const double lhs = std::cos(2 * g) - std::cos(2 * (g - a)) - std::cos(2 * (g - b)) + std::cos(2 * (g - a - b));
    const double rhs = -4.0 * std::sin(a) * std::sin(b) * std::cos(2 * g - a - b);
    r.max_sum_identity = std::max(r.max_sum_identity, std::abs(lhs - rhs));

    r.max_half_angle = std::max({r.max_half_angle,
                                 std::abs(std::cos(a + b) - std::cos(a - b) + 2.0 * std::sin(a) * std::sin(b)),
                                 std::abs(std::sin(a + b) - std::sin(a - b) - 2.0 * std::cos(a) * std::sin(b))});

    const int n = nd(rng);
    const double ri = rinv(rng);
    const double u = unit(rng);
    const cd e_rho = std::exp(-2.0 * pi * I * double(n) * ri);
    const cd e_u = std::exp(2.0 * pi * I * double(n) * u);
    const cd q = ((1.0 - e_rho) * e_u - (1.0 - std::conj(e_rho)) * std::conj(e_u)) / (2.0 * I);
    const double q_real = 2.0 * std::cos(2 * pi * n * (u - 0.5 * ri)) * std::sin(pi * n * ri);
    r.max_q = std::max({r.max_q, std::abs(q.real() - q_real), std::abs(q.imag())});

    const double alpha = 0.1 + 5.0 * unit(rng);
    const double phi = 0.5 * pi * unit(rng);
    const cd e_ph = std::exp(I * (2.0 * pi * n * u - alpha * phi));
    const cd qs = ((1.0 - e_rho) * e_ph - (1.0 - std::conj(e_rho)) * std::conj(e_ph)) / (2.0 * I);
    const double theta_n = 0.5 * ri + alpha * phi / (2.0 * pi * n);
    const double qs_real = 2.0 * std::sin(pi * n * ri) * std::cos(2 * pi * n * (u - theta_n));
    r.max_q_phase = std::max({r.max_q_phase, std::abs(qs.real() - qs_real), std::abs(qs.imag())});

    const double B = amp(rng);
    const double ra = rinv(rng), rb = rinv(rng);
    const double al = pi * n * ra, be = pi * n * rb;
    const cd gp = -B * (1.0 - std::exp(-2.0 * I * al)) * (1.0 - std::exp(-2.0 * I * be));
    const cd gm = -B * (1.0 - std::exp(2.0 * I * al)) * (1.0 - std::exp(2.0 * I * be));
    const cd pair = gm * std::conj(e_u) + gp * e_u;
    const double theta = 0.5 * (ra + rb);
    const double prod = 8.0 * B * std::sin(al) * std::sin(be) * std::cos(2 * pi * n * (u - theta));
    r.max_product = std::max({r.max_product, std::abs(pair.real() - prod), std::abs(pair.imag())});
  }
  return r;
}

}  // namespace benford
