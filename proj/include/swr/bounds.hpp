#pragma once
// Closed-form concentration bounds for the mean of a sample drawn without
// replacement from a finite population of N reals in [a, b].
//
// Tail functions bound P(sample mean - population mean >= eps); radius
// functions invert a tail at confidence level delta. Everything here is pure
// arithmetic on a population summary; sampling lives elsewhere.

#include <cstdint>
#include <optional>

namespace swr {

struct PopulationSummary {
  std::int64_t pop_size = 0;     // N >= 2
  std::int64_t sample_size = 0;  // 1 <= n <= N
  double range_low = 0.0;        // a <= b, known support bounds
  double range_high = 0.0;
  // biased (N-denominator) population variance; required by Bernstein-family
  // bounds, ignored by Hoeffding-family ones. Must satisfy 0 <= v <= (b-a)^2/4.
  std::optional<double> variance{};

  double range() const { return range_high - range_low; }
};

// throws std::invalid_argument naming the violated precondition
void validate(const PopulationSummary& s);

// f = n/N (fraction seen), g = N/n - 1 (remaining-to-sample ratio),
// rho = the finite-population factor, kappa = its Bernstein companion.
struct ScaleFactors {
  double f = 0.0;
  double g = 0.0;
  double rho = 0.0;
  double kappa = 0.0;
};

// value = min(1, exp(raw_exponent) + additive_slack) always holds.
struct TailProbability {
  double value = 1.0;
  double raw_exponent = 0.0;    // unclamped exponent of the exponential part
  double additive_slack = 0.0;  // delta term of Bernstein-Serfling tails, else 0
};

struct ConfidenceRadius {
  double value = 0.0;
  double confidence_spent = 0.0;  // total failure probability: delta, 2*delta or 5*delta
};

enum class MgfVariant {
  serfling,  // n(1 - (n-1)/N) factor, needs n <= N-1
  improved,  // (n+1)(1 - n/N) factor, valid through n = N
};

// phi(c) = (exp(c) - 1 - c) / c^2, phi(0) = 1/2. Nondecreasing on R.
double phi(double c);

// zeta(u) = (1+u)log(1+u) - u for u >= 0. Satisfies zeta(u) >= u^2/(2 + 2u/3).
double zeta(double u);

// rho_n = 1 - (n-1)/N when 2n <= N, else (1 - n/N)(1 + 1/n). Computed as one
// correctly rounded rational per branch; rho_N = 0 exactly and
// n * rho_n = min(n(N-n+1), (n+1)(N-n)) / N.
double rho(std::int64_t n, std::int64_t N);

// kappa_n = 4/3 + sqrt(n(n-1) / (N(N-n+1))) when 2n <= N,
// else 4/3 + sqrt((N-n-1)(N-n) / ((n+1)N)). Range [4/3, 4/3 + 1/sqrt(2)];
// kappa_1 = kappa_N = 4/3 exactly.
double kappa(std::int64_t n, std::int64_t N);

ScaleFactors scale_factors(std::int64_t n, std::int64_t N);

// with-replacement baselines
TailProbability hoeffding_tail(const PopulationSummary& s, double eps);
TailProbability bernstein_tail(const PopulationSummary& s, double eps);

// log E exp(lambda * (sum of n draws - n*mu)) upper bound, lambda > 0:
// (b-a)^2/8 * lambda^2 * n(1 - (n-1)/N)   [serfling, n <= N-1]
// (b-a)^2/8 * lambda^2 * (n+1)(1 - n/N)   [improved, n <= N]
double hs_log_mgf_bound(std::int64_t n, std::int64_t N, double lambda,
                        double range, MgfVariant variant);

// n(1 - (n-1)/N), the closed form dominating sum_{k=1}^{n} (N-n)^2/(N-k)^2
// for 1 <= n <= N-1 (equality at n = 1)
double serfling_sum_bound(std::int64_t n, std::int64_t N);

// Hoeffding-Serfling tails, 1 <= n <= N-1. Forward controls the maximum over
// sample sizes k in [n, N-1], backward over k in [1, n].
TailProbability hs_tail_forward(const PopulationSummary& s, double eps);
TailProbability hs_tail_backward(const PopulationSummary& s, double eps);

// (b-a) sqrt(rho_n log(1/delta) / (2n)); holds with probability > 1 - delta.
// Accepts n = N, where the radius is exactly 0.
ConfidenceRadius hs_radius(const PopulationSummary& s, double delta);

// sigma (b-a) sqrt(2 log(1/delta) / m): the deviation scale entering the
// variance envelopes; m >= 1, delta in (0, 1], sigma >= 0
double c_delta(std::int64_t m, double delta, double sigma, double range);

// variance envelopes gamma^2 (backward chain) and gamma~^2 (forward chain,
// needs n <= N-1); the (n-1)/N resp. (N-n-1)/n weighted c_delta term drops
// out exactly when its weight is 0
double bs_gamma2(const PopulationSummary& s, double delta);
double bs_gamma2_tilde(const PopulationSummary& s, double delta);

// Bernstein-Serfling tails, 1 <= n <= N-1:
// exp(-(n eps^2/2) / (gamma^2 + (2/3)(b-a) eps)) + slack.
// envelope_delta overrides the level used for both the variance envelope and
// the additive slack (they coincide in tail form); defaulted, both use delta.
TailProbability bs_tail_backward(const PopulationSummary& s, double eps, double delta,
                                 std::optional<double> envelope_delta = std::nullopt);
TailProbability bs_tail_forward(const PopulationSummary& s, double eps, double delta,
                                std::optional<double> envelope_delta = std::nullopt);

// sigma sqrt(2 rho_n log(1/delta) / n) + kappa_n (b-a) log(1/delta) / n;
// holds with probability > 1 - 2*delta. Accepts n = N.
ConfidenceRadius bs_radius(const PopulationSummary& s, double delta);

// high-probability covers of the running conditional variances:
// backward covers max over k in [1, n] of the remaining-set variance before
// draw k; forward (needs n <= N-1) covers max over k in [n, N-1] of the
// prefix-set variance after k+1 draws. delta in (0, 1) strict.
double variance_envelope_backward(std::int64_t n, std::int64_t N, double delta,
                                  double sigma, double range);
double variance_envelope_forward(std::int64_t n, std::int64_t N, double delta,
                                 double sigma, double range);

// sigma_hat + (b-a)(1 + sqrt(1 + rho_n)) sqrt(log(3/delta) / (2n)):
// upper-bounds the true sigma with probability > 1 - delta, delta in (0, 1)
double sigma_upper(std::int64_t n, std::int64_t N, double delta,
                   double sigma_hat, double range);

// kappa of the empirical radius: 7/3 + 3/sqrt(2) = 4.45465367689...;
// dominates sup_n kappa_n = 4/3 + 1/sqrt(2)
extern const double ebs_kappa;

// sigma_hat sqrt(2 rho_n log(1/delta) / n) + ebs_kappa (b-a) log(1/delta) / n;
// holds with probability > 1 - 5*delta. Accepts n = N.
ConfidenceRadius ebs_radius(std::int64_t n, std::int64_t N, double delta,
                            double sigma_hat, double range);

}  // namespace swr
