#pragma once
// Seeded without-replacement sampling and the Monte Carlo exceedance
// estimator behind the figure experiments.

#include <cstdint>
#include <vector>

#include "swr/population.hpp"

namespace swr {

struct ExceedanceEstimate {
  double p_hat = 0.0;
  std::int64_t reps = 0;
  double std_err = 0.0;  // sqrt(p_hat (1 - p_hat) / reps)
};

// the first n picks of a seeded partial Fisher-Yates pass, in draw order;
// every ordered selection of n distinct elements is equally likely
std::vector<double> draw_without_replacement(const Population& pop, std::int64_t n,
                                             std::uint64_t seed);

// estimates P(sample mean - population mean >= eps) over reps independent
// draws of size n; repetition r uses substream (seed, r) only
ExceedanceEstimate estimate_exceedance(const Population& pop, std::int64_t n,
                                       double eps, std::int64_t reps,
                                       std::uint64_t seed);

struct PathPoint {
  std::int64_t k = 0;  // draws so far, 1-based
  double prefix_mean = 0.0;
  double prefix_variance = 0.0;  // biased (k-denominator)
};

// one full random permutation of pop with running prefix statistics;
// row k summarizes the first k draws, row N the whole population
std::vector<PathPoint> exhaustion_path(const Population& pop, std::uint64_t seed);

}  // namespace swr
