#pragma once
// Experiment drivers behind the command line tool: the two figure CSVs and
// the enumeration-backed self-verification suite. All output is a pure
// function of the configuration, seed included.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "swr/population.hpp"

namespace swr {

struct ExperimentConfig {
  DistributionSpec dist = DistributionSpec::gaussian(0.0, 1.0);
  std::int64_t N = 10'000;
  double epsilon = 0.01;
  double delta = 0.05;
  std::int64_t reps = 1000;
  std::uint64_t seed = 1;
  std::vector<std::int64_t> n_grid;  // empty selects default_grid(N)
};

// 40 log-spaced integers on [min(10, N), N], deduplicated, plus N-1 and N
std::vector<std::int64_t> default_grid(std::int64_t N);

// CSV with header n,empirical_p,std_err,hoeffding,bernstein,
// hoeffding_serfling,bernstein_serfling: Monte Carlo exceedance estimates for
// P(sample mean - mu >= epsilon) next to the four tail bounds. The
// bernstein_serfling column carries its +delta slack at cfg.delta and
// evaluates the formula at min(n, N-1); the hoeffding_serfling column uses
// the rho_n-selected exponent, which is exactly 0 at n = N.
void run_figure1(const ExperimentConfig& cfg, std::ostream& out);

// CSV with header n,hs_radius,bs_radius,ebs_radius: confidence radii at
// cfg.delta while one seeded pass exhausts the population; the empirical
// column uses the running sigma_hat of that pass.
void run_figure2(const ExperimentConfig& cfg, std::ostream& out);

struct VerifyOptions {
  std::int64_t max_pop = 7;        // largest enumerated population, in [2, 8]
  std::int64_t random_fixtures = 50;
  std::uint64_t seed = 1;
  // Mutation hook: bound values are multiplied by this before the validity
  // comparisons. 1 leaves the suite honest; 0.5 must flip it red.
  double bound_scale = 1.0;
};

// prints one line per check with its max violation; true when all pass
bool run_verify(const VerifyOptions& opt, std::ostream& out);

// %.12g, the shared number format of every CSV/stdout value
std::string format_significant(double x);

}  // namespace swr
