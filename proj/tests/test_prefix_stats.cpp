#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "swr/prefix_stats.hpp"
#include "swr/rng.hpp"

using namespace swr;

TEST_CASE("PrefixStats streams the batch statistics") {
  Rng rng(7);
  std::vector<double> values;
  PrefixStats st;
  for (int i = 0; i < 3000; ++i) {
    double x = std::exp(1.0 + rng.next_gaussian());
    values.push_back(x);
    st.push(x);
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= double(values.size());
    if (i % 307 == 0) {
      CHECK(std::fabs(st.mean() - mean) <= 1e-12 * std::fabs(mean));
      CHECK(std::fabs(st.variance() - empirical_variance(values)) <=
            1e-10 * (1.0 + empirical_variance(values)));
    }
  }
  CHECK(st.count == 3000);
}

TEST_CASE("PrefixStats clamps rounding residue on constant data") {
  PrefixStats st;
  for (int i = 0; i < 5; ++i) st.push(0.1);  // 0.1 is not a binary fraction
  CHECK(st.variance() >= 0.0);
  CHECK(st.variance() <= 1e-30);
  PrefixStats empty;
  CHECK_THROWS_AS(empty.mean(), std::invalid_argument);
  CHECK_THROWS_AS(empty.variance(), std::invalid_argument);
}

TEST_CASE("empirical_variance: hand value and degenerate input") {
  std::vector<double> v = {0.0, 1.0, 2.0};
  CHECK(std::fabs(empirical_variance(v) - 2.0 / 3.0) <= 1e-15);
  std::vector<double> one = {4.0};
  CHECK(empirical_variance(one) == 0.0);
  CHECK_THROWS_AS(empirical_variance(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("decompose_vn splits the centered second moment") {
  std::vector<double> v = {1.0, 2.0, 4.0, 8.0};
  double mu = 3.0;  // deliberately not the sample mean
  VnDecomposition d = decompose_vn(v, mu);
  double direct = 0.0;
  for (double x : v) direct += (x - mu) * (x - mu);
  direct /= double(v.size());
  CHECK(std::fabs(d.vn - direct) <= 1e-15);
  CHECK(std::fabs(d.bias_sq - (3.75 - 3.0) * (3.75 - 3.0)) <= 1e-15);
  CHECK(std::fabs(d.sigma_hat_sq - empirical_variance(v)) <= 1e-15);
  CHECK(std::fabs(d.vn - (d.bias_sq + d.sigma_hat_sq)) <=
        1e-12 * (1.0 + std::fabs(d.vn)));

  // identity holds on rough random data too
  Rng rng(11);
  std::vector<double> w;
  for (int i = 0; i < 1000; ++i) w.push_back(std::exp(1.0 + rng.next_gaussian()));
  VnDecomposition dw = decompose_vn(w, 4.0);
  CHECK(std::fabs(dw.vn - (dw.bias_sq + dw.sigma_hat_sq)) <= 1e-12 * (1.0 + dw.vn));
}
