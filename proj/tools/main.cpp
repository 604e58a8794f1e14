// Command line front end: single bound evaluations, the two figure
// experiments, and the enumeration-backed verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swr/bounds.hpp"
#include "swr/experiments.hpp"

namespace {

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
  if (path.empty()) return fn(std::cout);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + path);
  return fn(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"concentration bounds for the mean under sampling without replacement"};
  app.require_subcommand(1);

  // bound: evaluate one closed-form tail probability or confidence radius
  auto* bound = app.add_subcommand("bound", "evaluate one closed-form bound");
  std::string bound_name;
  bound
      ->add_option("name", bound_name,
                   "which bound: tails give P(sample mean - mu >= epsilon), "
                   "radii the inverted confidence width")
      ->required()
      ->check(CLI::IsMember({"hoeffding", "bernstein", "hs-forward", "hs-backward",
                             "hs-radius", "bs-forward", "bs-backward", "bs-radius",
                             "ebs-radius", "sigma-upper"}));
  std::int64_t b_n = 0, b_N = 0;
  double b_range = 1.0, b_eps = 0.0, b_delta = 0.0, b_sigma = 0.0, b_sigma_hat = 0.0;
  std::string b_out;
  bound->add_option("--n", b_n, "sample size")->required();
  bound->add_option("--N", b_N, "population size (default: n)");
  bound->add_option("--range", b_range, "support width b - a (default 1)");
  bound->add_option("--epsilon", b_eps, "deviation threshold (tails)");
  bound->add_option("--delta", b_delta, "confidence level (radii, bernstein-serfling tails)");
  bound->add_option("--sigma", b_sigma, "population standard deviation");
  bound->add_option("--sigma-hat", b_sigma_hat, "sample standard deviation");
  bound->add_option("--out", b_out, "write the value here instead of stdout");

  // figure1: empirical exceedance vs the four tail bounds
  auto* fig1 = app.add_subcommand(
      "figure1", "CSV: Monte Carlo exceedance estimates against the tail bounds");
  swr::ExperimentConfig cfg1;
  std::string f1_dist = "gaussian", f1_out;
  std::vector<std::int64_t> f1_grid;
  fig1->add_option("--seed", cfg1.seed, "master seed (default 1)");
  fig1->add_option("--N", cfg1.N, "population size (default 10000)");
  fig1->add_option("--epsilon", cfg1.epsilon, "deviation threshold (default 0.01)");
  fig1->add_option("--delta", cfg1.delta,
                   "slack level of the bernstein_serfling column (default 0.05)");
  fig1->add_option("--reps", cfg1.reps, "Monte Carlo repetitions per n (default 1000)");
  fig1->add_option("--dist", f1_dist, "gaussian | lognormal | bernoulli:<p>");
  fig1->add_option("--grid", f1_grid, "explicit comma-separated sample sizes")
      ->delimiter(',');
  fig1->add_option("--out", f1_out, "write the CSV here instead of stdout");

  // figure2: the three confidence radii while the population is exhausted
  auto* fig2 = app.add_subcommand(
      "figure2", "CSV: confidence radii along one population-exhausting pass");
  swr::ExperimentConfig cfg2;
  cfg2.N = 1'000'000;
  std::string f2_dist = "gaussian", f2_out;
  std::vector<std::int64_t> f2_grid;
  fig2->add_option("--seed", cfg2.seed, "master seed (default 1)");
  fig2->add_option("--N", cfg2.N, "population size (default 1000000)");
  fig2->add_option("--delta", cfg2.delta, "confidence level (default 0.05)");
  fig2->add_option("--dist", f2_dist, "gaussian | lognormal | bernoulli:<p>");
  fig2->add_option("--grid", f2_grid, "explicit comma-separated sample sizes")
      ->delimiter(',');
  fig2->add_option("--out", f2_out, "write the CSV here instead of stdout");

  // verify: exhaustive self-checks on tiny populations
  auto* verify = app.add_subcommand(
      "verify", "run the enumeration-backed verification suite");
  swr::VerifyOptions vopt;
  std::string v_out;
  verify->add_option("--seed", vopt.seed, "fixture seed (default 1)");
  verify->add_option("--max-pop", vopt.max_pop,
                     "largest enumerated population size, 2..8 (default 7)");
  verify->add_option("--fixtures", vopt.random_fixtures,
                     "number of random fixtures (default 50)");
  verify->add_option("--bound-scale", vopt.bound_scale)->group("");  // mutation hook
  verify->add_option("--out", v_out, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bound->parsed()) {
      std::int64_t n = b_n;
      std::int64_t N = bound->count("--N") ? b_N : n;
      auto has = [&](const char* flag) { return bound->count(flag) > 0; };
      auto need = [&](const char* flag, double v) {
        if (!has(flag))
          throw std::invalid_argument(std::string(flag) + " is required for bound '" +
                                      bound_name + "'");
        return v;
      };
      swr::PopulationSummary s;
      s.pop_size = N;
      s.sample_size = n;
      s.range_low = 0.0;
      s.range_high = b_range;
      if (has("--sigma")) s.variance = b_sigma * b_sigma;

      double value = 0.0;
      if (bound_name == "hoeffding") {
        value = swr::hoeffding_tail(s, need("--epsilon", b_eps)).value;
      } else if (bound_name == "bernstein") {
        need("--sigma", b_sigma);
        value = swr::bernstein_tail(s, need("--epsilon", b_eps)).value;
      } else if (bound_name == "hs-forward") {
        value = swr::hs_tail_forward(s, need("--epsilon", b_eps)).value;
      } else if (bound_name == "hs-backward") {
        value = swr::hs_tail_backward(s, need("--epsilon", b_eps)).value;
      } else if (bound_name == "hs-radius") {
        value = swr::hs_radius(s, need("--delta", b_delta)).value;
      } else if (bound_name == "bs-forward") {
        need("--sigma", b_sigma);
        value = swr::bs_tail_forward(s, need("--epsilon", b_eps),
                                     need("--delta", b_delta))
                    .value;
      } else if (bound_name == "bs-backward") {
        need("--sigma", b_sigma);
        value = swr::bs_tail_backward(s, need("--epsilon", b_eps),
                                      need("--delta", b_delta))
                    .value;
      } else if (bound_name == "bs-radius") {
        need("--sigma", b_sigma);
        value = swr::bs_radius(s, need("--delta", b_delta)).value;
      } else if (bound_name == "ebs-radius") {
        value = swr::ebs_radius(n, N, need("--delta", b_delta),
                                need("--sigma-hat", b_sigma_hat), b_range)
                    .value;
      } else {  // sigma-upper
        value = swr::sigma_upper(n, N, need("--delta", b_delta),
                                 need("--sigma-hat", b_sigma_hat), b_range);
      }
      return with_output(b_out, [&](std::ostream& os) {
        os << swr::format_significant(value) << '\n';
        return 0;
      });
    }

    if (fig1->parsed()) {
      cfg1.dist = swr::parse_distribution(f1_dist);
      cfg1.n_grid = f1_grid;
      return with_output(f1_out, [&](std::ostream& os) {
        swr::run_figure1(cfg1, os);
        return 0;
      });
    }

    if (fig2->parsed()) {
      cfg2.dist = swr::parse_distribution(f2_dist);
      cfg2.n_grid = f2_grid;
      return with_output(f2_out, [&](std::ostream& os) {
        swr::run_figure2(cfg2, os);
        return 0;
      });
    }

    // verify
    return with_output(v_out, [&](std::ostream& os) {
      return swr::run_verify(vopt, os) ? 0 : 1;
    });
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
