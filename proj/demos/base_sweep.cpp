// Sweeps the evaluation base for a Gaussian seed and lists where the first
// harmonic changes sign, next to the bases c = b^(1/m).

#include <cmath>
#include <cstdio>

#include <benford/benford.hpp>

using namespace benford;

int main() {
  const BenfordSpec spec{SeedSpec::gauss(0.0, 0.3), Base(16)};
  const auto rows = sweep_c(spec, Base(1.95), Base(17.0), 2000, 16, 512);

  std::printf("%-10s %-10s %-14s %s\n", "c", "1/rho", "A1", "sup|g-1|");
  for (std::size_t i = 0; i < rows.size(); i += 100)
    std::printf("%-10.4f %-10.4f %-+14.6e %.6e\n", rows[i].c, rows[i].rho_inv, rows[i].A1, rows[i].sup_norm);

  std::printf("\nsign changes of A1:\n");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i - 1].A1 * rows[i].A1 >= 0) continue;
    const double t = rows[i - 1].A1 / (rows[i - 1].A1 - rows[i].A1);
    const double c = rows[i - 1].c + t * (rows[i].c - rows[i - 1].c);
    const double m = std::log(16.0) / std::log(c);
    std::printf("  c ~ %.5f   log_c 16 ~ %.4f\n", c, m);
  }
}
