#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

namespace benford::quad {

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct ComplexEstimate {
  std::complex<double> value;
  double error = 0.0;
};

inline constexpr std::size_t kMaxSplits = 20000;
inline constexpr double kRelTol = 1e-13;

/// Partition of [a, b] at the given breakpoints, then into equal panels no
/// longer than max_panel.
inline std::vector<double> panel_edges(double a, double b, std::span<const double> breaks,
                                       double max_panel) {
  std::vector<double> pts{a};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<double> edges{pts.front()};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double lo = pts[i - 1];
    const double hi = pts[i];
    const auto pieces = std::isfinite(max_panel)
                            ? std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / max_panel)))
                            : std::size_t{1};
    for (std::size_t k = 1; k < pieces; ++k)
      edges.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(pieces));
    edges.push_back(hi);
  }
  return edges;
}

/// Globally adaptive 61-point Gauss-Kronrod over [a, b], split at breakpoints.
/// The panel with the largest error estimate is bisected until the summed
/// error falls below kRelTol times the integral of |f|. Measuring against
/// |f| rather than the signed value keeps oscillatory integrands whose panels
/// nearly cancel from refining forever.
template <class F>
Estimate integrate(const F& f, double a, double b, std::span<const double> breaks = {},
                   double max_panel = std::numeric_limits<double>::infinity()) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  struct Panel {
    double lo, hi, value, error, l1;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  Estimate total;
  if (!(b > a)) return total;
  const auto rule = [&](double lo, double hi) {
    Panel p{lo, hi, 0.0, 0.0, 0.0};
    p.value = GK::integrate(f, lo, hi, 0, 0.0, &p.error, &p.l1);
    // Boost 1.74 reports the single-panel error on the reference interval [-1, 1]
    p.error *= 0.5 * (hi - lo);
    return p;
  };
  std::priority_queue<Panel> queue;
  double l1_total = 0.0;
  const auto edges = panel_edges(a, b, breaks, max_panel);
  for (std::size_t i = 1; i < edges.size(); ++i) {
    const Panel p = rule(edges[i - 1], edges[i]);
    l1_total += p.l1;
    total.value += p.value;
    total.error += p.error;
    queue.push(p);
  }
  const std::size_t budget = queue.size() + kMaxSplits;
  while (queue.size() < budget && total.error > kRelTol * l1_total && total.error > 1e-300) {
    const Panel worst = queue.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;
    queue.pop();
    const Panel left = rule(worst.lo, mid);
    const Panel right = rule(mid, worst.hi);
    l1_total += left.l1 + right.l1 - worst.l1;
    total.value += left.value + right.value - worst.value;
    total.error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // recompute the sums so cancellation in the running updates does not linger
  total.value = 0.0;
  total.error = 0.0;
  std::vector<Panel> parts;
  parts.reserve(queue.size());
  while (!queue.empty()) {
    parts.push_back(queue.top());
    queue.pop();
  }
  std::sort(parts.begin(), parts.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  for (const auto& p : parts) {
    total.value += p.value;
    total.error += p.error;
  }
  return total;
}

/// Integral of a complex-valued integrand, real and imaginary parts separately.
template <class F>
ComplexEstimate integrate_complex(const F& f, double a, double b, std::span<const double> breaks = {},
                                  double max_panel = std::numeric_limits<double>::infinity()) {
  const auto re = integrate([&](double x) { return std::real(f(x)); }, a, b, breaks, max_panel);
  const auto im = integrate([&](double x) { return std::imag(f(x)); }, a, b, breaks, max_panel);
  return {{re.value, im.value}, re.error + im.error};
}

/// Integral of f over [0, inf) by the exp-sinh rule; f must be smooth there.
template <class F>
Estimate integrate_half_line(const F& f) {
  thread_local boost::math::quadrature::exp_sinh<double> rule;
  Estimate e;
  e.value = rule.integrate(f, 1e-12, &e.error);
  return e;
}

/// Integral of exp(-i omega t) f(t) over t in [0, inf), omega != 0, by Ooura's
/// double-exponential Fourier rules.
template <class F>
ComplexEstimate fourier_half_line(const F& f, double omega) {
  thread_local boost::math::quadrature::ooura_fourier_cos<double> cos_rule(1e-10);
  thread_local boost::math::quadrature::ooura_fourier_sin<double> sin_rule(1e-10);
  const double w = std::abs(omega);
  const auto [c, cerr] = cos_rule.integrate(f, w);
  auto [s, serr] = sin_rule.integrate(f, w);
  if (omega < 0.0) s = -s;
  return {{c, -s}, std::abs(c) * cerr + std::abs(s) * serr};
}

}  // namespace benford::quad
