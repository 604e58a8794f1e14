#include "swr/sampling.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "swr/prefix_stats.hpp"
#include "swr/rng.hpp"

namespace swr {

namespace {

void check_sample_size(const Population& pop, std::int64_t n) {
  if (n < 1 || n > pop.size())
    throw std::invalid_argument("sample_size must lie in [1, pop_size]");
}

// Partial Fisher-Yates: after the loop, scratch[0..n) holds the drawn indices
// in draw order. scratch must hold a permutation of 0..N-1 on entry.
double sample_sum(const std::vector<double>& values, std::int64_t n, Rng& rng,
                  std::vector<std::uint32_t>& scratch) {
  const std::uint64_t N = scratch.size();
  double s = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    std::uint64_t j = std::uint64_t(i) + rng.next_below(N - std::uint64_t(i));
    std::swap(scratch[std::size_t(i)], scratch[std::size_t(j)]);
    s += values[scratch[std::size_t(i)]];
  }
  return s;
}

}  // namespace

std::vector<double> draw_without_replacement(const Population& pop, std::int64_t n,
                                             std::uint64_t seed) {
  check_sample_size(pop, n);
  std::vector<std::uint32_t> scratch(std::size_t(pop.size()));
  std::iota(scratch.begin(), scratch.end(), 0u);
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(std::size_t(n));
  const std::uint64_t N = scratch.size();
  for (std::int64_t i = 0; i < n; ++i) {
    std::uint64_t j = std::uint64_t(i) + rng.next_below(N - std::uint64_t(i));
    std::swap(scratch[std::size_t(i)], scratch[std::size_t(j)]);
    out.push_back(pop.values[scratch[std::size_t(i)]]);
  }
  return out;
}

ExceedanceEstimate estimate_exceedance(const Population& pop, std::int64_t n,
                                       double eps, std::int64_t reps,
                                       std::uint64_t seed) {
  check_sample_size(pop, n);
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");

  std::vector<std::uint32_t> scratch(std::size_t(pop.size()));
  std::int64_t hits = 0;
  for (std::int64_t r = 0; r < reps; ++r) {
    std::iota(scratch.begin(), scratch.end(), 0u);
    Rng rng = Rng::stream(seed, std::uint64_t(r));
    double s = sample_sum(pop.values, n, rng, scratch);
    hits += (s / double(n) - pop.mean) >= eps;
  }
  double p = double(hits) / double(reps);
  return {p, reps, std::sqrt(p * (1.0 - p) / double(reps))};
}

std::vector<PathPoint> exhaustion_path(const Population& pop, std::uint64_t seed) {
  const std::int64_t N = pop.size();
  std::vector<std::uint32_t> scratch(static_cast<std::size_t>(N));
  std::iota(scratch.begin(), scratch.end(), 0u);
  Rng rng(seed);
  PrefixStats stats;
  std::vector<PathPoint> out;
  out.reserve(std::size_t(N));
  for (std::int64_t i = 0; i < N; ++i) {
    std::uint64_t j = std::uint64_t(i) + rng.next_below(std::uint64_t(N - i));
    std::swap(scratch[std::size_t(i)], scratch[std::size_t(j)]);
    stats.push(pop.values[scratch[std::size_t(i)]]);
    out.push_back({i + 1, stats.mean(), stats.variance()});
  }
  return out;
}

}  // namespace swr
