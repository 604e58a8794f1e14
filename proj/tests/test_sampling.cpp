#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "swr/oracle.hpp"
#include "swr/population.hpp"
#include "swr/rng.hpp"
#include "swr/sampling.hpp"

using namespace swr;

TEST_CASE("rng: pinned first outputs and substream independence") {
  // frozen: any change here silently reseeds every experiment
  Rng a(0);
  CHECK(a.next_u64() == 0xE220A8397B1DCDAFull);
  CHECK(a.next_u64() == 0x6E789E6AA1B965F4ull);
  Rng b(0);
  CHECK(b.next_u64() == 0xE220A8397B1DCDAFull);
  CHECK(Rng::stream(42, 0).next_u64() != Rng::stream(42, 1).next_u64());
  CHECK(derive_seed(42, 7) == derive_seed(42, 7));
  CHECK(derive_seed(42, 7) != derive_seed(42, 8));
  CHECK(derive_seed(42, 7) != derive_seed(43, 7));
}

TEST_CASE("rng: unit intervals and unbiased integer draws") {
  Rng rng(123);
  double acc = 0.0;
  for (int i = 0; i < 100000; ++i) {
    double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    acc += u;
  }
  // mean of 1e5 uniforms: sd = 1/sqrt(12e5) ~ 9.1e-4, allow 5 sd
  CHECK(std::fabs(acc / 100000.0 - 0.5) <= 5.0 * 9.13e-4);

  for (int i = 0; i < 1000; ++i) {
    double u = rng.next_unit_open();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }

  std::vector<int> counts(13, 0);
  for (int i = 0; i < 130000; ++i) ++counts[std::size_t(rng.next_below(13))];
  for (int c : counts) {
    // each bin ~ Binomial(130000, 1/13): sd ~ 96, allow 6 sd around 10000
    CHECK(c >= 10000 - 576);
    CHECK(c <= 10000 + 576);
  }
  CHECK_THROWS_AS(rng.next_below(0), std::invalid_argument);
}

TEST_CASE("normal_quantile: frozen values and round-trip") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(std::fabs(normal_quantile(0.975) - 1.9599639845400542355) <= 1e-13);
  CHECK(std::fabs(normal_quantile(0.3) + 0.52440051270804078404) <= 1e-13);
  CHECK(std::fabs(normal_quantile(0.6) - 0.2533471031357997988) <= 1e-13);
  CHECK(std::fabs(normal_quantile(1e-10) + 6.3613409024040562047) <= 1e-12);
  for (double p : {1e-9, 1e-4, 0.02, 0.2, 0.5, 0.77, 0.9999, 1.0 - 1e-9}) {
    double q = normal_quantile(p);
    double back = 0.5 * std::erfc(-q / std::sqrt(2.0));
    CHECK(std::fabs(back - p) <= 1e-12 * p + 1e-15);
  }
  CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("parse_distribution and generated population moments") {
  CHECK(parse_distribution("gaussian").kind == DistributionSpec::Kind::gaussian);
  CHECK(parse_distribution("lognormal").param1 == 1.0);
  CHECK(parse_distribution("bernoulli:0.25").param1 == 0.25);
  CHECK_THROWS_AS(parse_distribution("cauchy"), std::invalid_argument);
  CHECK_THROWS_AS(parse_distribution("bernoulli:1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_distribution("bernoulli:x"), std::invalid_argument);

  const std::int64_t N = 200000;
  Population g = generate_population(parse_distribution("gaussian"), N, 5);
  CHECK(std::fabs(g.mean) <= 5.0 / std::sqrt(double(N)));
  CHECK(std::fabs(g.variance - 1.0) <= 0.02);

  Population ln = generate_population(parse_distribution("lognormal"), N, 5);
  // mean e^{1.5} ~ 4.4817, sd ~ 5.875: allow 5 standard errors
  CHECK(std::fabs(ln.mean - 4.4816890703380648226) <= 5.0 * 5.875 / std::sqrt(double(N)));
  CHECK(ln.range_low > 0.0);

  Population be = generate_population(parse_distribution("bernoulli:0.1"), N, 5);
  CHECK(std::fabs(be.mean - 0.1) <= 5.0 * 0.3 / std::sqrt(double(N)));
  CHECK(be.range_low == 0.0);
  CHECK(be.range_high == 1.0);

  // constant populations carry exactly zero variance
  Population c = generate_population(parse_distribution("bernoulli:1"), 100, 5);
  CHECK(c.variance == 0.0);
  CHECK(c.range_low == c.range_high);

  CHECK_THROWS_AS(generate_population(parse_distribution("gaussian"), 1, 5),
                  std::invalid_argument);
}

TEST_CASE("population summary checks out against cached moments") {
  Population p = Population::from_values({1.0, 2.0, 7.0, 2.0});
  CHECK(p.mean == 3.0);
  CHECK(std::fabs(p.variance - 5.5) <= 1e-15);
  CHECK(p.range_low == 1.0);
  CHECK(p.range_high == 7.0);
  PopulationSummary s = p.summary(2);
  CHECK(s.pop_size == 4);
  CHECK(s.sample_size == 2);
  CHECK(*s.variance == p.variance);
  CHECK_THROWS_AS(Population::from_values({1.0}), std::invalid_argument);
}

TEST_CASE("draw_without_replacement: determinism and multiset correctness") {
  Population p = Population::from_values({3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0});
  std::vector<double> d1 = draw_without_replacement(p, 5, 77);
  std::vector<double> d2 = draw_without_replacement(p, 5, 77);
  CHECK(d1 == d2);
  CHECK(d1.size() == 5);

  // a full draw is a permutation of the population
  std::vector<double> full = draw_without_replacement(p, 8, 123);
  std::vector<double> sorted_pop = p.values;
  std::sort(sorted_pop.begin(), sorted_pop.end());
  std::sort(full.begin(), full.end());
  CHECK(full == sorted_pop);

  CHECK_THROWS_AS(draw_without_replacement(p, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(draw_without_replacement(p, 9, 1), std::invalid_argument);
}

TEST_CASE("estimate_exceedance matches the exact law on a tiny population") {
  Population p = Population::from_values({0.0, 1.0, 2.0, 3.0, 4.0, 5.0});
  const std::int64_t reps = 100000;
  for (double eps : {0.0, 0.5, 1.5}) {
    double exact = oracle::exact_exceedance(p.values, 3, eps).value();
    ExceedanceEstimate est = estimate_exceedance(p, 3, eps, reps, 2024);
    double se = std::sqrt(std::max(exact * (1.0 - exact), 1e-9) / double(reps));
    CHECK(std::fabs(est.p_hat - exact) <= 4.0 * se);
    CHECK(est.reps == reps);
    CHECK(std::fabs(est.std_err -
                    std::sqrt(est.p_hat * (1.0 - est.p_hat) / double(reps))) <= 1e-15);
  }
  ExceedanceEstimate a = estimate_exceedance(p, 3, 0.5, 500, 9);
  ExceedanceEstimate b = estimate_exceedance(p, 3, 0.5, 500, 9);
  CHECK(a.p_hat == b.p_hat);
  CHECK_THROWS_AS(estimate_exceedance(p, 3, 0.5, 0, 9), std::invalid_argument);
  CHECK_THROWS_AS(estimate_exceedance(p, 3, -0.1, 10, 9), std::invalid_argument);
}

TEST_CASE("exhaustion_path: prefix rows and terminal moments") {
  Population p = Population::from_values({0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  std::vector<PathPoint> path = exhaustion_path(p, 31);
  REQUIRE(path.size() == 7);
  for (std::size_t i = 0; i < path.size(); ++i) CHECK(path[i].k == std::int64_t(i) + 1);
  CHECK(path[0].prefix_variance == 0.0);
  CHECK(path.back().prefix_mean == p.mean);  // integer data: exact
  CHECK(std::fabs(path.back().prefix_variance - p.variance) <= 1e-12);

  // figure-scale population: terminal moments agree to 1e-9 relative
  Population big = generate_population(parse_distribution("lognormal"), 30000, 8);
  std::vector<PathPoint> bp = exhaustion_path(big, 8);
  CHECK(std::fabs(bp.back().prefix_mean - big.mean) <= 1e-9 * std::fabs(big.mean));
  CHECK(std::fabs(bp.back().prefix_variance - big.variance) <= 1e-9 * big.variance);

  std::vector<PathPoint> again = exhaustion_path(p, 31);
  CHECK(again.back().prefix_mean == path.back().prefix_mean);
  CHECK(again[2].prefix_mean == path[2].prefix_mean);
}
