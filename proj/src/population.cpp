#include "swr/population.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swr/rng.hpp"

namespace swr {

DistributionSpec DistributionSpec::gaussian(double mean, double sd) {
  if (!(sd > 0.0)) throw std::invalid_argument("gaussian sd must be > 0");
  return {Kind::gaussian, mean, sd};
}

DistributionSpec DistributionSpec::lognormal(double norm_mean, double norm_sd) {
  if (!(norm_sd > 0.0)) throw std::invalid_argument("lognormal sd must be > 0");
  return {Kind::lognormal, norm_mean, norm_sd};
}

DistributionSpec DistributionSpec::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("bernoulli p must lie in [0, 1]");
  return {Kind::bernoulli, p, 0.0};
}

DistributionSpec parse_distribution(const std::string& text) {
  if (text == "gaussian") return DistributionSpec::gaussian(0.0, 1.0);
  if (text == "lognormal") return DistributionSpec::lognormal(1.0, 1.0);
  if (text.rfind("bernoulli:", 0) == 0) {
    std::size_t used = 0;
    double p;
    try {
      p = std::stod(text.substr(10), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad bernoulli parameter in '" + text + "'");
    }
    if (used != text.size() - 10)
      throw std::invalid_argument("bad bernoulli parameter in '" + text + "'");
    return DistributionSpec::bernoulli(p);
  }
  throw std::invalid_argument(
      "unknown distribution '" + text +
      "' (expected gaussian, lognormal, or bernoulli:<p>)");
}

Population Population::from_values(std::vector<double> values) {
  if (values.size() < 2)
    throw std::invalid_argument("population needs at least 2 values");
  for (double x : values)
    if (!std::isfinite(x))
      throw std::invalid_argument("population values must be finite");

  Population pop;
  pop.values = std::move(values);
  auto [lo, hi] = std::minmax_element(pop.values.begin(), pop.values.end());
  pop.range_low = *lo;
  pop.range_high = *hi;

  long double sum = 0.0L;
  for (double x : pop.values) sum += x;
  long double mu = sum / (long double)(pop.values.size());
  long double acc = 0.0L;
  for (double x : pop.values) {
    long double d = (long double)(x)-mu;
    acc += d * d;
  }
  pop.mean = double(mu);
  // all-equal values have variance exactly 0; don't let rounding say otherwise
  pop.variance =
      pop.range_low == pop.range_high ? 0.0 : double(acc / (long double)(pop.values.size()));
  return pop;
}

PopulationSummary Population::summary(std::int64_t n) const {
  PopulationSummary s;
  s.pop_size = size();
  s.sample_size = n;
  s.range_low = range_low;
  s.range_high = range_high;
  s.variance = variance;
  return s;
}

Population generate_population(const DistributionSpec& spec, std::int64_t N,
                               std::uint64_t seed) {
  if (N < 2) throw std::invalid_argument("population size must be >= 2");
  std::vector<double> v;
  v.reserve(std::size_t(N));
  Rng rng = Rng::stream(seed, 0);
  switch (spec.kind) {
    case DistributionSpec::Kind::gaussian:
      for (std::int64_t i = 0; i < N; ++i)
        v.push_back(spec.param1 + spec.param2 * rng.next_gaussian());
      break;
    case DistributionSpec::Kind::lognormal:
      for (std::int64_t i = 0; i < N; ++i)
        v.push_back(std::exp(spec.param1 + spec.param2 * rng.next_gaussian()));
      break;
    case DistributionSpec::Kind::bernoulli:
      for (std::int64_t i = 0; i < N; ++i)
        v.push_back(rng.next_unit() < spec.param1 ? 1.0 : 0.0);
      break;
  }
  return Population::from_values(std::move(v));
}

}  // namespace swr
