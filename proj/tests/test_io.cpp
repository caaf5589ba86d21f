#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <string>

#include <benford/benford.hpp>

using namespace benford;
using Catch::Approx;

TEST_CASE("numbers round-trip through 17 significant digits") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::nextafter(1.0, 2.0), 0.0}) {
    const std::string s = io::format_number(v);
    CHECK(io::parse_number(s) == v);
  }
  CHECK(io::format_number(0.5) == "0.5");
  CHECK_THROWS_AS(io::parse_number("abc"), io::ParseError);
  CHECK_THROWS_AS(io::parse_number("1.5x"), io::ParseError);
  CHECK_THROWS_AS(io::parse_number(""), io::ParseError);
}

TEST_CASE("wrapped pdf CSV and JSON") {
  const auto g = g_direct(BenfordSpec{SeedSpec::gauss(0.0, 0.3), Base(16)}, Base(13), 16);
  const std::string csv = io::to_csv(io::to_table(g));
  CHECK(csv.rfind("u,g\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);

  const auto back = io::wrapped_pdf_from_table(io::table_from_csv(csv), Provenance::DirectSum);
  CHECK(back.u == g.u);
  CHECK(back.g == g.g);

  const auto j = io::to_json(io::to_table(g));
  CHECK(j.at("columns") == io::Json::array({"u", "g"}));
  const auto from_json = io::table_from_json(io::parse_json(io::dump(j)));
  CHECK(from_json.column("g") == g.g);
  CHECK_THROWS_AS(from_json.column("missing"), io::ParseError);

  CHECK_THROWS_AS(io::table_from_csv(""), io::ParseError);
  CHECK_THROWS_AS(io::table_from_csv("u,g\n0.1\n"), io::ParseError);
  CHECK_THROWS_AS(io::table_from_csv("u,g\n0.1,zz\n"), io::ParseError);
  CHECK_THROWS_AS(io::table_from_json(io::parse_json(R"({"columns":["u"],"rows":[[1,2]]})")), io::ParseError);
  CHECK_THROWS_AS(io::parse_json("{not json"), io::ParseError);
  // CRLF input is accepted
  CHECK(io::table_from_csv("u,g\r\n0.5,1.25\r\n").rows.at(0).at(1) == 1.25);
}

TEST_CASE("sweep tables keep their column shape") {
  const BenfordSpec g{SeedSpec::gauss(0.0, 0.3), Base(16)};
  const auto t = io::to_table(sweep_c(g, Base(2), Base(20), 5, 4, 64));
  CHECK(t.columns == std::vector<std::string>{"c", "rho_inv", "A1", "sup_norm"});
  CHECK(t.rows.size() == 5);
  const DualSpec d{SeedSpec::step(), Base(10), SeedSpec::step(), Base(16)};
  const auto dt = io::to_table(dual_sweep_c(d, Base(2), Base(20), 3, 4, 64));
  CHECK(dt.columns == std::vector<std::string>{"c", "rho_inv", "A1", "sup_norm", "rho_a_inv", "rho_b_inv"});
  CHECK(io::table_from_csv(io::to_csv(dt)).rows == dt.rows);
}

TEST_CASE("series JSON round-trip") {
  const auto s = series_for(BenfordSpec{SeedSpec::gamma(2.0, 0.4), Base(10)}, Base(7), 5);
  const auto j = io::to_json(s);
  CHECK(j.at("n_max") == 5);
  CHECK(j.at("theta_constant") == false);
  CHECK(j.at("terms").size() == 5);
  CHECK(j.at("terms")[0].contains("theta"));
  const auto back = io::series_from_json(io::parse_json(io::dump(j)));
  REQUIRE(back.terms.size() == s.terms.size());
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    CHECK(back.terms[i].n == s.terms[i].n);
    CHECK(back.terms[i].A == s.terms[i].A);
    CHECK(back.terms[i].theta == s.terms[i].theta);
  }
  CHECK_THROWS_AS(io::series_from_json(io::parse_json(R"({"n_max":1})")), io::ParseError);
  const auto t = io::to_table(s);
  CHECK(t.columns == std::vector<std::string>{"n", "A", "theta"});
}

TEST_CASE("seed JSON parsing") {
  const auto g = io::parse_seed(R"({"family":"gauss","mu":0.2,"sigma":0.3})");
  CHECK(g.family() == Family::Gauss);
  CHECK(g.mu() == 0.2);
  CHECK(g.sigma() == 0.3);
  CHECK(io::parse_seed(R"({"family":"cauchy","sigma":1})").mu() == 0.0);
  CHECK(io::parse_seed(R"({"family":"step"})").family() == Family::Step);
  CHECK(io::parse_seed(R"({"family":"gamma","alpha":2,"beta":0.5})").alpha() == 2.0);

  for (const auto& s : {SeedSpec::laplace(0.1, 0.2), SeedSpec::logistic(-1, 2), SeedSpec::gamma(3, 0.1),
                        SeedSpec::step(), SeedSpec::piecewise_linear(0.25)}) {
    const auto back = io::seed_from_json(io::to_json(s));
    CHECK(back.describe() == s.describe());
  }

  CHECK_THROWS_AS(io::parse_seed(R"({"family":"gauss","sigma":0.3,"shape":1})"), io::ParseError);
  CHECK_THROWS_AS(io::parse_seed(R"({"family":"gauss","mu":0})"), io::ParseError);
  CHECK_THROWS_AS(io::parse_seed(R"({"family":"weibull","k":1})"), io::ParseError);
  CHECK_THROWS_AS(io::parse_seed(R"({"family":"gauss","sigma":"big"})"), io::ParseError);
  CHECK_THROWS_AS(io::parse_seed(R"(["gauss"])"), io::ParseError);
  CHECK_THROWS_AS(io::parse_seed(R"({"family":"step","sigma":1})"), io::ParseError);
  CHECK_THROWS_AS(io::parse_seed(R"({"family":"gauss","sigma":-1})"), DomainError);
}

TEST_CASE("sample batches round-trip, including values beyond the double range") {
  const auto batch = sample(BenfordSpec{SeedSpec::laplace(0.0, 0.5), Base(10)}, 500, 9);
  const auto csv_back = io::batch_from_csv(io::batch_to_csv(batch));
  REQUIRE(csv_back.size() == batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) CHECK(csv_back.log_x[i] == Approx(batch.log_x[i]).epsilon(1e-15).margin(1e-15));
  const auto json_back = io::batch_from_json(io::parse_json(io::dump(io::batch_to_json(batch))));
  for (std::size_t i = 0; i < batch.size(); ++i) CHECK(json_back.log_x[i] == Approx(batch.log_x[i]).epsilon(1e-15).margin(1e-15));

  SampleBatch huge;
  huge.log_x = {2000.0 * std::log(10.0) + std::log(3.2), -1000.0 * std::log(10.0) + std::log(4.5), 0.0};
  const std::string text = io::batch_to_csv(huge);
  // the mantissa carries the rounding of ln x, about 1e-12 relative at this exponent
  const auto line = text.substr(2, text.find('\n', 2) - 2);
  CHECK(io::parse_number(line.substr(0, line.find('e'))) == Approx(3.2).epsilon(1e-11));
  CHECK(text.find("e+2000") != std::string::npos);
  CHECK(text.find("e-1000") != std::string::npos);
  const auto back = io::batch_from_csv(text);
  for (std::size_t i = 0; i < huge.size(); ++i) CHECK(back.log_x[i] == Approx(huge.log_x[i]).epsilon(1e-14));
  const auto jback = io::batch_from_json(io::parse_json(io::dump(io::batch_to_json(huge))));
  for (std::size_t i = 0; i < huge.size(); ++i) CHECK(jback.log_x[i] == Approx(huge.log_x[i]).epsilon(1e-14));

  CHECK(io::parse_log_value("1e400") == Approx(400 * std::log(10.0)).epsilon(1e-15));
  CHECK_THROWS_AS(io::batch_from_csv("y\n1\n"), io::ParseError);
  CHECK_THROWS_AS(io::batch_from_csv("x\n-3\n"), io::ParseError);
  CHECK_THROWS_AS(io::batch_from_json(io::parse_json(R"({"columns":["y"],"rows":[]})")), io::ParseError);
}

TEST_CASE("uniformity report JSON") {
  const auto r = uniformity_test(sample(BenfordSpec{SeedSpec::step(), Base(10)}, 2000, 1), Base(10));
  const auto j = io::to_json(r);
  CHECK(j.size() == 4);
  CHECK(j.at("pass") == r.pass);
  const auto back = io::report_from_json(io::parse_json(io::dump(j)));
  CHECK(back.ks_statistic == r.ks_statistic);
  CHECK(back.n == r.n);
  CHECK(back.critical_01 == r.critical_01);
  CHECK_THROWS_AS(io::report_from_json(io::parse_json(R"({"ks":1})")), io::ParseError);
}

TEST_CASE("file helpers") {
  const std::string path = "benford_io_test.tmp";
  io::write_file(path, "a,b\n1,2\n");
  CHECK(io::read_file(path) == "a,b\n1,2\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::write_file("/nonexistent-dir/x.csv", "x"), io::IoError);
  CHECK_THROWS_AS(io::read_file("/nonexistent-dir/x.csv"), io::IoError);
}
