// Command-line front end: wrapped densities, coefficients, sweeps, sampling,
// uniformity checks, dual-base products and the trigonometric identity check.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <benford/benford.hpp>

namespace {

using namespace benford;
using io::Json;
using io::Table;

/// Bad flag value; the message starts with the flag name.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string seed, seed_a, seed_b;
  double base = 0, base_a = 0, base_b = 0, eval_base = 0;
  std::size_t grid = 1024;
  int n_max = kDefaultNMax;
  std::size_t count = 100000;
  std::uint64_t rng_seed = 0;
  std::string method = "direct";
  std::string mode = "pdf";
  std::string out;
  std::string format = "csv";
  double c_min = 0, c_max = 0;
  std::size_t steps = 100;
  std::size_t bins = 64;
  std::string in;
};

Base make_base(const char* flag, double v) {
  try {
    return Base(v);
  } catch (const DomainError& e) {
    throw ValidationError(std::string(flag) + ": " + e.what());
  }
}

SeedSpec make_seed(const char* flag, const std::string& text) {
  try {
    return io::parse_seed(text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string(flag) + ": " + e.what());
  }
}

void require(bool ok, const char* flag, const std::string& why) {
  if (!ok) throw ValidationError(std::string(flag) + ": " + why);
}

class Output {
 public:
  explicit Output(const Config& cfg) : cfg_(cfg) {}

  void table(const Table& t) const { emit(cfg_.format == "json" ? io::dump(io::to_json(t)) : io::to_csv(t)); }
  void json_or_table(const Json& j, const Table& t) const { emit(cfg_.format == "json" ? io::dump(j) : io::to_csv(t)); }

  void emit(const std::string& text) const {
    if (cfg_.out.empty() || cfg_.out == "-") {
      std::cout << text << std::flush;
      return;
    }
    io::write_file(cfg_.out, text);
  }

 private:
  const Config& cfg_;
};

Table pdf_table(const WrappedPdf* direct, const WrappedPdf* fourier, double* sup_diff) {
  if (direct && fourier) {
    Table t{{"u", "g_direct", "g_fourier", "diff"}, {}};
    *sup_diff = 0.0;
    for (std::size_t j = 0; j < direct->size(); ++j) {
      const double d = direct->g[j] - fourier->g[j];
      *sup_diff = std::max(*sup_diff, std::abs(d));
      t.rows.push_back({direct->u[j], direct->g[j], fourier->g[j], d});
    }
    return t;
  }
  return io::to_table(direct ? *direct : *fourier);
}

void check_grid(const Config& cfg) {
  require(cfg.grid >= 2, "--grid", "must be >= 2");
  require(cfg.n_max >= 1, "--n-max", "must be >= 1");
}

int run_pdf(const Config& cfg, const Output& out) {
  check_grid(cfg);
  const BenfordSpec spec{make_seed("--seed", cfg.seed), make_base("--base", cfg.base)};
  const Base c = make_base("--eval-base", cfg.eval_base);
  std::optional<WrappedPdf> direct, fourier;
  if (cfg.method != "fourier") direct = g_direct(spec, c, cfg.grid);
  if (cfg.method != "direct") fourier = series_eval(series_for(spec, c, cfg.n_max), cfg.grid);
  double sup_diff = 0.0;
  out.table(pdf_table(direct ? &*direct : nullptr, fourier ? &*fourier : nullptr, &sup_diff));
  if (direct && fourier) std::cerr << "sup_norm_diff=" << io::format_number(sup_diff) << '\n';
  return 0;
}

int run_coeffs(const Config& cfg, const Output& out) {
  require(cfg.n_max >= 1, "--n-max", "must be >= 1");
  const BenfordSpec spec{make_seed("--seed", cfg.seed), make_base("--base", cfg.base)};
  const Base c = make_base("--eval-base", cfg.eval_base);
  FourierSeries s;
  if (cfg.method == "direct") {
    std::vector<ComplexCoefficient> cs;
    for (int n = 1; n <= cfg.n_max; ++n) cs.push_back(coeff_quadrature(spec, c, n));
    s = series_from_coefficients(cs, spec.describe());
  } else {
    s = series_for(spec, c, cfg.n_max);
  }
  out.json_or_table(io::to_json(s), io::to_table(s));
  return 0;
}

int run_sweep(const Config& cfg, const Output& out) {
  check_grid(cfg);
  require(cfg.steps >= 1, "--steps", "must be >= 1");
  const BenfordSpec spec{make_seed("--seed", cfg.seed), make_base("--base", cfg.base)};
  const Base lo = make_base("--c-min", cfg.c_min);
  const Base hi = make_base("--c-max", cfg.c_max);
  require(lo.value() < hi.value(), "--c-max", "must exceed --c-min");
  out.table(io::to_table(sweep_c(spec, lo, hi, cfg.steps, cfg.n_max, cfg.grid)));
  return 0;
}

bool is_dual(const Config& cfg) { return !cfg.seed_a.empty() || !cfg.seed_b.empty() || cfg.base_a != 0 || cfg.base_b != 0; }

DualSpec make_dual(const Config& cfg) {
  const auto seed_or_step = [](const char* flag, const std::string& text) {
    return text.empty() ? SeedSpec::step() : make_seed(flag, text);
  };
  DualSpec d{seed_or_step("--seed-a", cfg.seed_a), make_base("--base-a", cfg.base_a),
             seed_or_step("--seed-b", cfg.seed_b), make_base("--base-b", cfg.base_b)};
  if (const auto w = d.integral_root_warning()) std::cerr << "warning: " << *w << '\n';
  return d;
}

SampleBatch draw(const Config& cfg) {
  require(cfg.count >= 1, "--count", "must be >= 1");
  if (is_dual(cfg)) return sample(make_dual(cfg), cfg.count, cfg.rng_seed);
  return sample(BenfordSpec{make_seed("--seed", cfg.seed), make_base("--base", cfg.base)}, cfg.count, cfg.rng_seed);
}

int run_sample(const Config& cfg, const Output& out) {
  const SampleBatch b = draw(cfg);
  out.emit(cfg.format == "json" ? io::dump(io::batch_to_json(b)) : io::batch_to_csv(b));
  return 0;
}

int run_verify(const Config& cfg, const Output& out) {
  require(cfg.bins >= 1, "--bins", "must be >= 1");
  const Base c = make_base("--eval-base", cfg.eval_base);
  SampleBatch b;
  if (!cfg.in.empty()) {
    std::string text;
    try {
      text = io::read_file(cfg.in);
    } catch (const io::IoError& e) {
      throw ValidationError(std::string("--in: ") + e.what());
    }
    try {
      const auto first = text.find_first_not_of(" \t\r\n");
      b = (first != std::string::npos && text[first] == '{') ? io::batch_from_json(io::parse_json(text))
                                                             : io::batch_from_csv(text);
    } catch (const io::ParseError& e) {
      throw ValidationError(std::string("--in: ") + e.what());
    }
    require(!b.empty(), "--in", "contains no samples");
  } else {
    b = draw(cfg);
  }
  const UniformityReport r = uniformity_test(b, c, cfg.bins);
  Table t{{"ks", "n", "critical_01", "pass"},
          {{r.ks_statistic, static_cast<double>(r.n), r.critical_01, r.pass ? 1.0 : 0.0}}};
  out.json_or_table(io::to_json(r), t);
  return 0;
}

int run_dual(const Config& cfg, const Output& out) {
  check_grid(cfg);
  const DualSpec d = make_dual(cfg);
  if (cfg.mode == "sweep") {
    require(cfg.steps >= 1, "--steps", "must be >= 1");
    const Base lo = make_base("--c-min", cfg.c_min);
    const Base hi = make_base("--c-max", cfg.c_max);
    require(lo.value() < hi.value(), "--c-max", "must exceed --c-min");
    out.table(io::to_table(dual_sweep_c(d, lo, hi, cfg.steps, cfg.n_max, cfg.grid)));
    return 0;
  }

  const Base c = make_base("--eval-base", cfg.eval_base);
  const auto [ra, rb] = dual_rho(d, c);
  const auto fourier_series = [&] {
    const bool even = detail::real_even_ft(d.seed_a, 1.0) && detail::real_even_ft(d.seed_b, 1.0);
    return even ? dual_series(d, c, cfg.n_max) : dual_series_from_coefficients(d, c, cfg.n_max);
  };
  if (cfg.mode == "series") {
    const FourierSeries s = fourier_series();
    Table t = io::to_table(s);
    t.columns.insert(t.columns.end(), {"rho_a_inv", "rho_b_inv"});
    for (auto& row : t.rows) row.insert(row.end(), {1.0 / ra, 1.0 / rb});
    Json j = io::to_json(s);
    j["rho_a_inv"] = 1.0 / ra;
    j["rho_b_inv"] = 1.0 / rb;
    out.json_or_table(j, t);
    return 0;
  }

  std::optional<WrappedPdf> direct, fourier;
  if (cfg.method != "fourier") {
    require(d.both_step(), "--method", "direct summation of a dual product needs step seeds; use --method fourier");
    direct = dual_g_direct(d, c, cfg.grid);
  }
  if (cfg.method != "direct") fourier = series_eval(fourier_series(), cfg.grid);
  double sup_diff = 0.0;
  out.table(pdf_table(direct ? &*direct : nullptr, fourier ? &*fourier : nullptr, &sup_diff));
  if (direct && fourier) std::cerr << "sup_norm_diff=" << io::format_number(sup_diff) << '\n';
  return 0;
}

int run_identities(const Config& cfg, const Output& out) {
  require(cfg.count >= 1, "--count", "must be >= 1");
  const TrigIdentityReport r = verify_trig_identities(cfg.count, cfg.rng_seed);
  Table t{{"trials", "sum_identity", "half_angle", "q", "q_phase", "product", "pass"},
          {{static_cast<double>(r.trials), r.max_sum_identity, r.max_half_angle, r.max_q, r.max_q_phase,
            r.max_product, r.pass() ? 1.0 : 0.0}}};
  const Json j{{"trials", r.trials},         {"sum_identity", r.max_sum_identity},
               {"half_angle", r.max_half_angle}, {"q", r.max_q},
               {"q_phase", r.max_q_phase},   {"product", r.max_product},
               {"pass", r.pass()}};
  out.json_or_table(j, t);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Benford variables: wrapped log densities, Fourier series, sampling"};
  app.require_subcommand(1);

  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output file (stdout if omitted)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  const auto add_seed = [&](CLI::App* sub, bool required = true) {
    auto* s = sub->add_option("--seed", cfg.seed, "Seed JSON, e.g. {\"family\":\"gauss\",\"mu\":0,\"sigma\":0.3}");
    auto* b = sub->add_option("--base", cfg.base, "Benford base b > 1");
    if (required) {
      s->required();
      b->required();
    }
  };
  const auto add_dual = [&](CLI::App* sub, bool required) {
    sub->add_option("--seed-a", cfg.seed_a, "Seed JSON of the base-a factor (default step)");
    sub->add_option("--seed-b", cfg.seed_b, "Seed JSON of the base-b factor (default step)");
    auto* a = sub->add_option("--base-a", cfg.base_a, "Base of the first factor");
    auto* b = sub->add_option("--base-b", cfg.base_b, "Base of the second factor");
    if (required) {
      a->required();
      b->required();
    }
  };
  const auto add_method = [&](CLI::App* sub) {
    sub->add_option("--method", cfg.method, "direct, fourier or both")
        ->check(CLI::IsMember({"direct", "fourier", "both"}));
  };

  auto* pdf = app.add_subcommand("pdf", "Wrapped density g(u) of log_c X");
  add_seed(pdf);
  pdf->add_option("--eval-base", cfg.eval_base, "Evaluation base c > 1")->required();
  pdf->add_option("--grid", cfg.grid, "Grid points on [0, 1)");
  pdf->add_option("--n-max", cfg.n_max, "Series terms");
  add_method(pdf);
  add_format(pdf);

  auto* coeffs = app.add_subcommand("coeffs", "Amplitude/phase series terms");
  add_seed(coeffs);
  coeffs->add_option("--eval-base", cfg.eval_base, "Evaluation base c > 1")->required();
  coeffs->add_option("--n-max", cfg.n_max, "Series terms");
  coeffs->add_option("--method", cfg.method, "fourier (closed form) or direct (quadrature)")
      ->check(CLI::IsMember({"direct", "fourier"}));
  coeffs->callback([&] {
    if (coeffs->count("--method") == 0) cfg.method = "fourier";
  });
  add_format(coeffs);

  auto* sweep = app.add_subcommand("sweep", "A_1 and sup-norm deviation across evaluation bases");
  add_seed(sweep);
  sweep->add_option("--c-min", cfg.c_min, "Smallest evaluation base")->required();
  sweep->add_option("--c-max", cfg.c_max, "Largest evaluation base")->required();
  sweep->add_option("--steps", cfg.steps, "Number of evaluation bases");
  sweep->add_option("--n-max", cfg.n_max, "Series terms");
  sweep->add_option("--grid", cfg.grid, "Grid for the sup-norm");
  add_format(sweep);

  auto* smp = app.add_subcommand("sample", "Draw a reproducible batch of X");
  add_seed(smp, false);
  add_dual(smp, false);
  smp->add_option("--count", cfg.count, "Sample size");
  smp->add_option("--rng-seed", cfg.rng_seed, "Generator seed");
  add_format(smp);

  auto* verify = app.add_subcommand("verify", "KS uniformity test of frac(log_c X)");
  add_seed(verify, false);
  add_dual(verify, false);
  verify->add_option("--eval-base", cfg.eval_base, "Evaluation base c > 1")->required();
  verify->add_option("--count", cfg.count, "Sample size when sampling");
  verify->add_option("--rng-seed", cfg.rng_seed, "Generator seed");
  verify->add_option("--bins", cfg.bins, "Histogram bins");
  verify->add_option("--in", cfg.in, "Sample file (CSV or JSON) instead of sampling");
  add_format(verify);

  auto* dual = app.add_subcommand("dual", "Product of base-a and base-b Benford variables");
  add_dual(dual, true);
  dual->add_option("--eval-base", cfg.eval_base, "Evaluation base c > 1");
  dual->add_option("--mode", cfg.mode, "pdf, series or sweep")->check(CLI::IsMember({"pdf", "series", "sweep"}));
  dual->add_option("--grid", cfg.grid, "Grid points on [0, 1)");
  dual->add_option("--n-max", cfg.n_max, "Series terms");
  dual->add_option("--c-min", cfg.c_min, "Smallest evaluation base (sweep)");
  dual->add_option("--c-max", cfg.c_max, "Largest evaluation base (sweep)");
  dual->add_option("--steps", cfg.steps, "Number of evaluation bases (sweep)");
  add_method(dual);
  add_format(dual);

  auto* ident = app.add_subcommand("identities", "Random checks of the trigonometric reductions");
  ident->add_option("--count", cfg.count, "Trials");
  ident->add_option("--rng-seed", cfg.rng_seed, "Generator seed");
  add_format(ident);
  ident->callback([&] {
    if (ident->count("--count") == 0) cfg.count = 1000;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  const Output out(cfg);
  try {
    if (*pdf) return run_pdf(cfg, out);
    if (*coeffs) return run_coeffs(cfg, out);
    if (*sweep) return run_sweep(cfg, out);
    if (*smp) {
      if (!is_dual(cfg)) require(!cfg.seed.empty() && cfg.base != 0, "--seed", "--seed and --base are required");
      return run_sample(cfg, out);
    }
    if (*verify) {
      if (cfg.in.empty() && !is_dual(cfg))
        require(!cfg.seed.empty() && cfg.base != 0, "--seed", "--seed and --base (or --in) are required");
      return run_verify(cfg, out);
    }
    if (*dual) {
      if (cfg.mode != "sweep") require(cfg.eval_base != 0, "--eval-base", "is required");
      return run_dual(cfg, out);
    }
    if (*ident) return run_identities(cfg, out);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedOperation& e) {
    std::cerr << "error: " << (*dual ? "--seed-a/--seed-b: " : "--seed: ") << e.what() << '\n';
    return 2;
  } catch (const io::IoError& e) {
    std::cerr << "error: --out: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
