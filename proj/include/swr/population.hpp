#pragma once
// Finite populations and the distributions the figure experiments draw them
// from. A Population caches its exact summary moments once so bound
// evaluations and Monte Carlo loops never recompute them.

#include <cstdint>
#include <string>
#include <vector>

#include "swr/bounds.hpp"

namespace swr {

struct DistributionSpec {
  enum class Kind { gaussian, lognormal, bernoulli };
  Kind kind = Kind::gaussian;
  double param1 = 0.0;  // gaussian/lognormal: mean of the underlying normal; bernoulli: p
  double param2 = 1.0;  // gaussian/lognormal: sd of the underlying normal

  static DistributionSpec gaussian(double mean, double sd);
  static DistributionSpec lognormal(double norm_mean, double norm_sd);
  static DistributionSpec bernoulli(double p);
};

// "gaussian" (std normal), "lognormal" (exp of N(1,1)), "bernoulli:<p>"
DistributionSpec parse_distribution(const std::string& text);

struct Population {
  std::vector<double> values;
  double mean = 0.0;
  double variance = 0.0;  // biased (N-denominator)
  double range_low = 0.0;
  double range_high = 0.0;

  std::int64_t size() const { return std::int64_t(values.size()); }
  double range() const { return range_high - range_low; }

  // needs >= 2 values; moments accumulated in long double
  static Population from_values(std::vector<double> values);

  // summary for a sample of n, with the realized min/max as support bounds
  PopulationSummary summary(std::int64_t n) const;
};

Population generate_population(const DistributionSpec& spec, std::int64_t N,
                               std::uint64_t seed);

}  // namespace swr
