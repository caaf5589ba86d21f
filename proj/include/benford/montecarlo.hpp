#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "construct.hpp"
#include "core.hpp"
#include "dualbase.hpp"
#include "parallel.hpp"
#include "seeds.hpp"
#include "wrapped_pdf.hpp"

namespace benford {

/// Counter-based generator: the i-th draw of a stream is a pure function of
/// (seed, i), so any partition of indices over threads yields the same batch.
struct SplitMix64 {
  static constexpr const char* kName = "splitmix64";

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix(mix(seed) + (index + 1) * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform on [0, 1), multiples of 2^-53.
  static double unit(std::uint64_t seed, std::uint64_t index) noexcept {
    return static_cast<double>(at(seed, index) >> 11) * 0x1.0p-53;
  }

  /// Odd multiple of 2^-53 in (0, 1); 1 - p is exact, so both tails stay accurate.
  static double open_unit(std::uint64_t seed, std::uint64_t index) noexcept {
    return static_cast<double>(((at(seed, index) >> 12) << 1) | 1U) * 0x1.0p-53;
  }
};

/// Sampled values are held as ln x: heavy-tailed seeds put b^{W+U} far outside
/// the double range, while ln x stays finite.
struct SampleBatch {
  std::vector<double> log_x;
  std::uint64_t rng_seed = 0;
  std::string spec;
  std::string algorithm = SplitMix64::kName;

  std::size_t size() const noexcept { return log_x.size(); }
  bool empty() const noexcept { return log_x.empty(); }

  /// x = exp(ln x); overflows to inf or underflows to 0 outside the double range.
  std::vector<double> values() const {
    std::vector<double> out(log_x.size());
    std::transform(log_x.begin(), log_x.end(), out.begin(), [](double l) { return std::exp(l); });
    return out;
  }
};

namespace detail {
// Inverse-cdf draw of W, choosing the tail formula that keeps precision.
inline double draw_seed(const SeedSpec& s, double p) {
  if (s.family() == Family::Step) return 0.0;
  return p < 0.5 ? seed_quantile(s, p) : seed_upper_quantile(s, 1.0 - p);
}

// log_b X = W + U with W ~ H and U ~ uniform[0, 1): the density of W + U is
// the integral over u in [0, 1) of h(v - u), which is H(v) - H(v - 1).
inline double draw_log(const SeedSpec& s, double ln_base, std::uint64_t seed, std::uint64_t index) {
  const double w = draw_seed(s, SplitMix64::open_unit(seed, index));
  const double u = SplitMix64::unit(seed, index + 1);
  return ln_base * (w + u);
}
}  // namespace detail

/// Draws X = b^{W+U}; stream indices 2i and 2i+1 feed sample i.
inline SampleBatch sample(const BenfordSpec& spec, std::size_t count, std::uint64_t rng_seed) {
  if (count < 1) throw DomainError("sample requires count >= 1");
  SampleBatch out;
  out.rng_seed = rng_seed;
  out.spec = spec.describe();
  out.log_x.resize(count);
  const double lb = spec.base.ln();
  parallel_for(count, [&](std::size_t i) {
    out.log_x[i] = detail::draw_log(spec.seed, lb, rng_seed, 2 * static_cast<std::uint64_t>(i));
  });
  return out;
}

/// X = X_a X_b with independent factors; stream indices 4i..4i+3 feed sample i.
inline SampleBatch sample(const DualSpec& spec, std::size_t count, std::uint64_t rng_seed) {
  if (count < 1) throw DomainError("sample requires count >= 1");
  SampleBatch out;
  out.rng_seed = rng_seed;
  out.spec = spec.describe();
  out.log_x.resize(count);
  const double la = spec.base_a.ln();
  const double lb = spec.base_b.ln();
  parallel_for(count, [&](std::size_t i) {
    const auto k = 4 * static_cast<std::uint64_t>(i);
    out.log_x[i] = detail::draw_log(spec.seed_a, la, rng_seed, k) + detail::draw_log(spec.seed_b, lb, rng_seed, k + 2);
  });
  return out;
}

/// exp(N(mu, sigma^2)) samples.
inline SampleBatch sample_lognormal(double mu, double sigma, std::size_t count, std::uint64_t rng_seed) {
  if (!(std::isfinite(sigma) && sigma > 0.0)) throw DomainError("sample_lognormal requires sigma > 0");
  const SeedSpec normal = SeedSpec::gauss(mu, sigma);
  SampleBatch out;
  out.rng_seed = rng_seed;
  out.spec = "lognormal(mu=" + std::to_string(mu) + ",sigma=" + std::to_string(sigma) + ")";
  out.log_x.resize(count);
  parallel_for(count, [&](std::size_t i) {
    out.log_x[i] = detail::draw_seed(normal, SplitMix64::open_unit(rng_seed, static_cast<std::uint64_t>(i)));
  });
  return out;
}

struct UniformityReport {
  double ks_statistic = 0.0;
  std::size_t n = 0;
  double critical_01 = 0.0;
  bool pass = false;
  WrappedPdf empirical_hist;
};

/// frac(log_c x) for every sample.
inline std::vector<double> wrapped_logs(const SampleBatch& batch, Base c) {
  std::vector<double> y(batch.size());
  const double lc = c.ln();
  std::transform(batch.log_x.begin(), batch.log_x.end(), y.begin(), [lc](double l) { return frac(l / lc); });
  return y;
}

/// Kolmogorov-Smirnov distance of frac(log_c x) from uniform, plus a density
/// histogram on `bins` equal cells (grid at left edges j / bins).
inline UniformityReport uniformity_test(const SampleBatch& batch, Base c, std::size_t bins = 64) {
  if (batch.empty()) throw DomainError("uniformity_test requires a nonempty batch");
  if (bins < 1) throw DomainError("uniformity_test requires bins >= 1");
  std::vector<double> y = wrapped_logs(batch, c);
  std::sort(y.begin(), y.end());
  const auto n = static_cast<double>(y.size());
  double d = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double above = static_cast<double>(i + 1) / n - y[i];
    const double below = y[i] - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }

  UniformityReport r;
  r.ks_statistic = d;
  r.n = y.size();
  r.critical_01 = 1.63 / std::sqrt(n);
  r.pass = d < r.critical_01;
  r.empirical_hist.u = WrappedPdf::uniform_grid(bins);
  r.empirical_hist.g.assign(bins, 0.0);
  r.empirical_hist.provenance = Provenance::Empirical;
  r.empirical_hist.params = batch.spec + ",c=" + std::to_string(c.value()) + ",bins=" + std::to_string(bins);
  const auto nb = static_cast<double>(bins);
  for (double v : y) {
    const auto j = std::min(bins - 1, static_cast<std::size_t>(v * nb));
    r.empirical_hist.g[j] += 1.0;
  }
  for (double& g : r.empirical_hist.g) g *= nb / n;
  return r;
}

struct DigitRow {
  double s;
  double empirical_cdf;
  double prediction;  // log_b(s)
  double std_error;   // binomial standard error of the empirical cdf at the prediction
};

/// Empirical Pr(S_b(X) <= s) against log_b(s) at s = 1, 1.5, 2, 3, ... and b.
inline std::vector<DigitRow> significand_digit_table(const SampleBatch& batch, Base b) {
  if (batch.empty()) throw DomainError("significand_digit_table requires a nonempty batch");
  std::vector<double> t = wrapped_logs(batch, b);
  std::sort(t.begin(), t.end());
  std::vector<double> thresholds{1.0, 1.5};
  for (double s = 2.0; s < b.value(); s += 1.0) thresholds.push_back(s);
  thresholds.push_back(b.value());

  const auto n = static_cast<double>(t.size());
  std::vector<DigitRow> rows;
  for (double s : thresholds) {
    if (s > b.value()) break;
    const double p = s >= b.value() ? 1.0 : std::log(s) / b.ln();
    double emp = 0.0;
    if (s >= b.value())
      emp = 1.0;
    else if (s > 1.0)
      emp = static_cast<double>(std::upper_bound(t.begin(), t.end(), p) - t.begin()) / n;
    rows.push_back({s, emp, p, std::sqrt(p * (1.0 - p) / n)});
  }
  return rows;
}

}  // namespace benford
