#pragma once
// Streaming mean and biased (k-denominator) variance of the prefix of a
// without-replacement path. Plain sum / sum-of-squares accumulation; at the
// population sizes used here cancellation stays far below the 1e-9 checks
// applied downstream, and a tiny negative rounding residue clamps to 0.

#include <cstdint>
#include <span>
#include <stdexcept>

namespace swr {

struct PrefixStats {
  std::int64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void push(double x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }

  double mean() const {
    if (count < 1) throw std::invalid_argument("PrefixStats::mean needs data");
    return sum / double(count);
  }

  double variance() const {
    if (count < 1) throw std::invalid_argument("PrefixStats::variance needs data");
    double m = mean();
    double v = sum_sq / double(count) - m * m;
    return v > 0.0 ? v : 0.0;
  }
};

// (1/n) sum (x_i - mean)^2, two-pass
double empirical_variance(std::span<const double> values);

struct VnDecomposition {
  double vn = 0.0;            // (1/n) sum (x_i - mu)^2
  double bias_sq = 0.0;       // (sample mean - mu)^2
  double sigma_hat_sq = 0.0;  // biased sample variance; vn = bias_sq + sigma_hat_sq
};

VnDecomposition decompose_vn(std::span<const double> values, double mu);

}  // namespace swr
