#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "fourier.hpp"
#include "montecarlo.hpp"
#include "seeds.hpp"
#include "wrapped_pdf.hpp"

namespace benford::io {

using Json = nlohmann::ordered_json;

/// Malformed input text (CSV, JSON, seed objects).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Output file could not be opened or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, enough to round-trip any double.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_number(std::string_view s) {
  const std::string str(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + str + "'");
  }
  if (used != str.size()) throw ParseError("trailing characters in number: '" + str + "'");
  return v;
}

/// Named columns of doubles; the common shape behind every CSV and JSON table.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw ParseError("missing column '" + std::string(name) + "'");
  }

  std::vector<double> column(std::string_view name) const {
    const std::size_t k = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[k]);
    return out;
  }
};

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += format_number(r[i]);
    }
    out += '\n';
  }
  return out;
}

namespace detail {
inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}
}  // namespace detail

inline Table table_from_csv(const std::string& text) {
  const auto lines = detail::lines_of(text);
  if (lines.empty()) throw ParseError("empty CSV");
  Table t;
  t.columns = detail::split_fields(lines.front());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = detail::split_fields(lines[i]);
    if (fields.size() != t.columns.size())
      throw ParseError("CSV row " + std::to_string(i) + " has " + std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(t.columns.size()));
    std::vector<double> row;
    for (const auto& f : fields) row.push_back(parse_number(f));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Json to_json(const Table& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back(r);
  return Json{{"columns", t.columns}, {"rows", rows}};
}

inline Table table_from_json(const Json& j) {
  try {
    Table t;
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& r : j.at("rows")) {
      auto row = r.get<std::vector<double>>();
      if (row.size() != t.columns.size()) throw ParseError("JSON row width does not match columns");
      t.rows.push_back(std::move(row));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed table JSON: ") + e.what());
  }
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

/// Pretty-printed JSON text terminated by a newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// --- WrappedPdf -------------------------------------------------------------

inline Table to_table(const WrappedPdf& p) {
  Table t{{"u", "g"}, {}};
  for (std::size_t j = 0; j < p.size(); ++j) t.rows.push_back({p.u[j], p.g[j]});
  return t;
}

inline WrappedPdf wrapped_pdf_from_table(const Table& t, Provenance provenance) {
  WrappedPdf p;
  p.u = t.column("u");
  p.g = t.column("g");
  p.provenance = provenance;
  return p;
}

// --- sweeps -------------------------------------------------------------------

inline Table to_table(const std::vector<SweepRow>& rows) {
  Table t{{"c", "rho_inv", "A1", "sup_norm"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.c, r.rho_inv, r.A1, r.sup_norm});
  return t;
}

inline Table to_table(const std::vector<DualSweepRow>& rows) {
  Table t{{"c", "rho_inv", "A1", "sup_norm", "rho_a_inv", "rho_b_inv"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.c, r.rho_inv, r.A1, r.sup_norm, r.rho_a_inv, r.rho_b_inv});
  return t;
}

// --- series -------------------------------------------------------------------

inline Json to_json(const FourierSeries& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms) terms.push_back(Json{{"n", t.n}, {"A", t.A}, {"theta", t.theta}});
  return Json{{"n_max", s.n_max}, {"theta_constant", s.theta_constant}, {"terms", terms}};
}

inline FourierSeries series_from_json(const Json& j) {
  try {
    FourierSeries s;
    s.n_max = j.at("n_max").get<int>();
    s.theta_constant = j.at("theta_constant").get<bool>();
    for (const auto& t : j.at("terms"))
      s.terms.push_back({t.at("n").get<int>(), t.at("A").get<double>(), t.at("theta").get<double>()});
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed series JSON: ") + e.what());
  }
}

inline Table to_table(const FourierSeries& s) {
  Table t{{"n", "A", "theta"}, {}};
  for (const auto& term : s.terms) t.rows.push_back({static_cast<double>(term.n), term.A, term.theta});
  return t;
}

// --- seeds --------------------------------------------------------------------

inline Json to_json(const SeedSpec& s) {
  Json j{{"family", std::string(family_name(s.family()))}};
  if (s.is_symmetric()) {
    j["mu"] = s.mu();
    j["sigma"] = s.sigma();
  } else if (s.family() == Family::Gamma) {
    j["alpha"] = s.alpha();
    j["beta"] = s.beta();
  } else if (s.family() == Family::PiecewiseLinear) {
    j["slope"] = s.slope();
  }
  return j;
}

/// Builds a SeedSpec from {"family": ..., parameters}. Keys outside the
/// family's parameter set are rejected, as are missing required parameters.
inline SeedSpec seed_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("seed must be a JSON object");
  if (!j.contains("family") || !j.at("family").is_string()) throw ParseError("seed requires a string \"family\"");
  const std::string name = j.at("family").get<std::string>();
  const auto family = family_from_name(name);
  if (!family) throw ParseError("unknown seed family '" + name + "'");

  std::vector<std::string> allowed{"family"};
  switch (*family) {
    case Family::Gamma: allowed.insert(allowed.end(), {"alpha", "beta"}); break;
    case Family::PiecewiseLinear: allowed.push_back("slope"); break;
    case Family::Step: break;
    default: allowed.insert(allowed.end(), {"mu", "sigma"}); break;
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ParseError("unknown key '" + key + "' for seed family '" + name + "'");
    if (key != "family" && !value.is_number()) throw ParseError("seed key '" + key + "' must be a number");
  }
  const auto get = [&](const char* key, std::optional<double> fallback = std::nullopt) {
    if (j.contains(key)) return j.at(key).get<double>();
    if (fallback) return *fallback;
    throw ParseError("seed family '" + name + "' requires \"" + key + "\"");
  };

  switch (*family) {
    case Family::Gauss: return SeedSpec::gauss(get("mu", 0.0), get("sigma"));
    case Family::Cauchy: return SeedSpec::cauchy(get("mu", 0.0), get("sigma"));
    case Family::Laplace: return SeedSpec::laplace(get("mu", 0.0), get("sigma"));
    case Family::Logistic: return SeedSpec::logistic(get("mu", 0.0), get("sigma"));
    case Family::Gamma: return SeedSpec::gamma(get("alpha"), get("beta"));
    case Family::Step: return SeedSpec::step();
    case Family::PiecewiseLinear: return SeedSpec::piecewise_linear(get("slope"));
  }
  throw ParseError("unreachable seed family");
}

/// Seed from JSON text.
inline SeedSpec parse_seed(const std::string& text) { return seed_from_json(parse_json(text)); }

// --- Monte Carlo ----------------------------------------------------------------

/// Decimal text of x = exp(ln_x). Values outside the double range are written
/// as mantissa and decimal exponent computed from ln_x, e.g. "3.2e+1000".
inline std::string format_log_value(double ln_x) {
  const double x = std::exp(ln_x);
  if (std::isnormal(x)) return format_number(x);
  const double l10 = ln_x / std::numbers::ln10;
  double e = std::floor(l10);
  double m = std::pow(10.0, l10 - e);
  if (m >= 10.0) {
    m /= 10.0;
    e += 1.0;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17ge%+.0f", m, e);
  return buf;
}

/// ln of a decimal value, accepting exponents beyond the double range.
inline double parse_log_value(std::string_view s) {
  const auto pos = s.find_first_of("eE");
  const double mant = parse_number(s.substr(0, pos));
  const double exp10 = pos == std::string_view::npos ? 0.0 : parse_number(s.substr(pos + 1));
  if (!(mant > 0.0)) throw ParseError("sample value must be positive: '" + std::string(s) + "'");
  return std::log(mant) + exp10 * std::numbers::ln10;
}

inline std::string batch_to_csv(const SampleBatch& b) {
  std::string out = "x\n";
  for (double l : b.log_x) out += format_log_value(l) + '\n';
  return out;
}

inline Json batch_to_json(const SampleBatch& b) {
  Json rows = Json::array();
  for (double l : b.log_x) {
    const std::string text = format_log_value(l);
    const double x = std::exp(l);
    rows.push_back(std::isnormal(x) ? Json::array({x}) : Json::array({text}));
  }
  return Json{{"columns", {"x"}}, {"rows", rows}};
}

inline SampleBatch batch_from_csv(const std::string& text) {
  const auto lines = detail::lines_of(text);
  if (lines.empty() || lines.front() != "x") throw ParseError("sample CSV must have the single header 'x'");
  SampleBatch b;
  b.spec = "imported";
  for (std::size_t i = 1; i < lines.size(); ++i) b.log_x.push_back(parse_log_value(lines[i]));
  return b;
}

inline SampleBatch batch_from_json(const Json& j) {
  try {
    if (j.at("columns") != Json::array({"x"})) throw ParseError("sample JSON must have the single column 'x'");
    SampleBatch b;
    b.spec = "imported";
    for (const auto& r : j.at("rows")) {
      const auto& v = r.at(0);
      b.log_x.push_back(v.is_string() ? parse_log_value(v.get<std::string>()) : std::log(v.get<double>()));
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed sample JSON: ") + e.what());
  }
}

inline Json to_json(const UniformityReport& r) {
  return Json{{"ks", r.ks_statistic}, {"n", r.n}, {"critical_01", r.critical_01}, {"pass", r.pass}};
}

inline UniformityReport report_from_json(const Json& j) {
  try {
    UniformityReport r;
    r.ks_statistic = j.at("ks").get<double>();
    r.n = j.at("n").get<std::size_t>();
    r.critical_01 = j.at("critical_01").get<double>();
    r.pass = j.at("pass").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what());
  }
}

// --- files ----------------------------------------------------------------------

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace benford::io
