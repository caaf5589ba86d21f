#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace benford {

enum class Provenance { DirectSum, FourierSeries, Empirical };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::DirectSum: return "direct";
    case Provenance::FourierSeries: return "fourier";
    case Provenance::Empirical: return "empirical";
  }
  return "unknown";
}

/// Density g(u) of a wrapped (fractional-part) variable sampled on the grid
/// u_j = j / N, j = 0..N-1.
struct WrappedPdf {
  std::vector<double> u;
  std::vector<double> g;
  Provenance provenance = Provenance::DirectSum;
  std::string params;
  /// Sum of |A_n| over the computed terms; set only for series-derived grids.
  std::optional<double> amplitude_sum;
  /// Estimated sum of |A_n| beyond the last computed term.
  std::optional<double> tail_bound;

  std::size_t size() const noexcept { return g.size(); }
  bool empty() const noexcept { return g.empty(); }

  /// Periodic trapezoid rule over [0, 1).
  double integral() const {
    double s = 0.0;
    for (double v : g) s += v;
    return g.empty() ? 0.0 : s / static_cast<double>(g.size());
  }

  static std::vector<double> uniform_grid(std::size_t n) {
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = static_cast<double>(j) / static_cast<double>(n);
    return u;
  }
};

}  // namespace benford
