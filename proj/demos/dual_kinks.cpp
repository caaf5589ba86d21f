// Product of a base-10 and a base-16 Benford variable, read in base 13:
// prints the wrapped density and the corners of the trapezoid it wraps.

#include <cmath>
#include <cstdio>

#include <benford/benford.hpp>

using namespace benford;

int main() {
  const DualSpec d{SeedSpec::step(), Base(10), SeedSpec::step(), Base(16)};
  const Base c(13);

  const auto trap = dual_trapezoid(d, c);
  std::printf("trapezoid corners in log_13 space:");
  for (double v : trap.vertices()) std::printf(" %.5f", v);
  std::printf("\nwrapped corners:");
  for (double v : trap.vertices()) std::printf(" %.5f", frac(v));
  std::printf("\n\n");

  const auto g = dual_g_direct(d, c, 64);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const int bar = static_cast<int>(std::lround((g.g[j] - 0.8) * 200));
    std::printf("%.4f %.5f %*s\n", g.u[j], g.g[j], bar > 0 ? bar : 1, "*");
  }

  const auto series = dual_series(d, c, 8);
  std::printf("\nA1 = %+.5f  theta1 = %.5f\n", series.terms[0].A, series.terms[0].theta);
  for (double same : {10.0, 16.0}) {
    const auto flat = dual_g_direct(d, Base(same), 256);
    std::printf("c = %g: sup|g - 1| = %.2e\n", same, deviation_norm(flat).sup_norm);
  }
}
