#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "swr/experiments.hpp"

using namespace swr;

namespace {

std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           const std::string& expected_header) {
  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  REQUIRE(line == expected_header);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("default_grid shape") {
  std::vector<std::int64_t> g = default_grid(10000);
  REQUIRE(!g.empty());
  CHECK(g.front() == 10);
  CHECK(std::find(g.begin(), g.end(), 9999) != g.end());
  CHECK(g.back() == 10000);
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());  // no duplicates
  for (std::int64_t n : g) {
    CHECK(n >= 1);
    CHECK(n <= 10000);
  }

  std::vector<std::int64_t> tiny = default_grid(5);
  CHECK(tiny.front() >= 1);
  CHECK(tiny.back() == 5);
  CHECK(std::find(tiny.begin(), tiny.end(), 4) != tiny.end());

  std::vector<std::int64_t> two = default_grid(2);
  CHECK(two == std::vector<std::int64_t>{1, 2});
}

TEST_CASE("format_significant") {
  CHECK(format_significant(0.0) == "0");
  CHECK(format_significant(1.0) == "1");
  CHECK(format_significant(0.35) == "0.35");
  CHECK(format_significant(1e-300) == "1e-300");
  // 12 significant digits, shortest form
  CHECK(format_significant(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("run_figure1: tiny config, structure and determinism") {
  ExperimentConfig cfg;
  cfg.dist = parse_distribution("lognormal");
  cfg.N = 200;
  cfg.epsilon = 0.5;
  cfg.delta = 0.05;
  cfg.reps = 50;
  cfg.seed = 7;
  cfg.n_grid = {10, 100, 199, 200};

  std::ostringstream a, b;
  run_figure1(cfg, a);
  run_figure1(cfg, b);
  CHECK(a.str() == b.str());  // same config, same bytes

  auto rows = parse_csv(
      a.str(),
      "n,empirical_p,std_err,hoeffding,bernstein,hoeffding_serfling,bernstein_serfling");
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 7);
    CHECK(rows[i][0] == double(cfg.n_grid[i]));
    CHECK(rows[i][1] >= 0.0);
    CHECK(rows[i][1] <= 1.0);
    for (std::size_t j = 3; j < 7; ++j) {
      CHECK(rows[i][j] >= 0.0);
      CHECK(rows[i][j] <= 1.0);
    }
    CHECK(rows[i][6] >= cfg.delta);  // the +delta slack never washes out
  }
  CHECK(rows.back()[5] == 0.0);  // exhausted sample: zero exceedance mass

  ExperimentConfig other = cfg;
  other.seed = 8;
  std::ostringstream c;
  run_figure1(other, c);
  CHECK(a.str() != c.str());
}

TEST_CASE("run_figure1: rejects grid entries outside [1, N]") {
  ExperimentConfig cfg;
  cfg.N = 100;
  cfg.reps = 5;
  cfg.n_grid = {0, 10};
  std::ostringstream out;
  CHECK_THROWS_AS(run_figure1(cfg, out), std::invalid_argument);
  cfg.n_grid = {10, 101};
  CHECK_THROWS_AS(run_figure1(cfg, out), std::invalid_argument);
}

TEST_CASE("run_figure2: structure and determinism") {
  ExperimentConfig cfg;
  cfg.N = 500;
  cfg.delta = 0.05;
  cfg.seed = 3;
  cfg.n_grid = {10, 250, 499, 500};

  std::ostringstream a, b;
  run_figure2(cfg, a);
  run_figure2(cfg, b);
  CHECK(a.str() == b.str());

  auto rows = parse_csv(a.str(), "n,hs_radius,bs_radius,ebs_radius");
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    REQUIRE(r.size() == 4);
    CHECK(r[1] >= 0.0);
    CHECK(r[2] > 0.0);
    CHECK(r[3] > 0.0);
  }
  CHECK(rows.back()[0] == 500.0);
  CHECK(rows.back()[1] == 0.0);  // whole population measured: zero radius
}

TEST_CASE("run_verify: honest pass and the mutation hook") {
  VerifyOptions opt;
  opt.max_pop = 5;
  opt.random_fixtures = 5;
  opt.seed = 11;

  std::ostringstream out;
  CHECK(run_verify(opt, out));
  CHECK(out.str().find("all checks passed") != std::string::npos);

  opt.bound_scale = 0.5;
  std::ostringstream bad;
  CHECK(!run_verify(opt, bad));
  CHECK(bad.str().find("FAIL") != std::string::npos);
}
