#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "errors.hpp"
#include "wrapped_pdf.hpp"

namespace benford {

/// A logarithm base. Any real number strictly greater than one is allowed;
/// integrality is never assumed.
class Base {
 public:
  explicit Base(double value) : value_(value) {
    if (!(std::isfinite(value) && value > 1.0))
      throw DomainError("base must be finite and > 1, got " + std::to_string(value));
  }

  double value() const noexcept { return value_; }
  double ln() const noexcept { return std::log(value_); }

  friend bool operator==(Base, Base) = default;

 private:
  double value_;
};

struct LogConstants {
  double lambda_b;  // 1 / ln b
  double lambda_c;  // 1 / ln c
  double rho;       // ln c / ln b

  double rho_inv() const noexcept { return lambda_c / lambda_b; }
};

inline LogConstants log_constants(Base b, Base c) {
  const double lb = b.ln();
  const double lc = c.ln();
  return LogConstants{1.0 / lb, 1.0 / lc, lc / lb};
}

struct Significand {
  double s;
  std::int64_t k;
};

/// Base-b significand: the unique s in [1, b) with x = s * b^k.
inline Significand significand(double x, Base b) {
  if (!(std::isfinite(x) && x > 0.0))
    throw DomainError("significand requires finite x > 0, got " + std::to_string(x));
  const double bv = b.value();
  auto k = static_cast<std::int64_t>(std::floor(std::log(x) / b.ln()));
  double s = x / std::pow(bv, static_cast<double>(k));
  // floor of a log ratio can land one off near exact powers of b
  if (s < 1.0) {
    --k;
    s = x / std::pow(bv, static_cast<double>(k));
  } else if (s >= bv) {
    ++k;
    s = x / std::pow(bv, static_cast<double>(k));
  }
  if (s >= bv) s = std::nextafter(bv, 1.0);
  if (s < 1.0) s = 1.0;
  return {s, k};
}

/// Fractional part y - floor(y), always in [0, 1).
inline double frac(double y) {
  if (!std::isfinite(y)) throw DomainError("frac requires a finite argument");
  const double f = y - std::floor(y);
  // y = -tiny rounds to exactly 1.0
  return f < 1.0 ? f : std::nextafter(1.0, 0.0);
}

struct DeviationReport {
  double sup_norm = 0.0;
  std::optional<double> amplitude_bound;
  std::size_t grid_size = 0;
};

/// Grid estimate of max |g(u) - 1| over [0, 1).
inline DeviationReport deviation_norm(const WrappedPdf& g) {
  if (g.empty()) throw DomainError("deviation_norm requires a nonempty grid");
  DeviationReport r;
  r.grid_size = g.size();
  for (double v : g.g) r.sup_norm = std::max(r.sup_norm, std::abs(v - 1.0));
  if (g.provenance == Provenance::FourierSeries) r.amplitude_bound = g.amplitude_sum;
  return r;
}

}  // namespace benford
