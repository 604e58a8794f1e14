#pragma once
// Exhaustive ground truth on tiny populations: exact exceedance probabilities
// and moment generating functions by subset enumeration, plus structural
// checks (martingales, conditional variances, convex reduction, exponential
// supermartingales) by ordered enumeration. Probabilities are counts over
// counts; real arithmetic only enters inside exp/phi. Budgets are hard
// errors: C(pop_size, n) <= 1e6 for subset work, pop_size <= 8 for ordered
// work, pop_size <= 7 for the mgf suite, pop_size^n <= 1e6 for reduction.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace swr::oracle {

struct ExactProbability {
  std::int64_t favorable = 0;
  std::int64_t total = 0;
  double value() const { return double(favorable) / double(total); }
};

// P(sample mean - mu >= eps) over all unordered size-n subsets, or the strict
// event with strict = true. The comparison runs on N*s - n*T, which is exact
// for integer-valued populations.
ExactProbability exact_exceedance(const std::vector<double>& pop, std::int64_t n,
                                  double eps, bool strict = false);

// E exp(lambda * (sum of n draws - n*mu))
double exact_mgf(const std::vector<double>& pop, std::int64_t n, double lambda);

// P(sample mean - mu > radius(sample values)) over all unordered size-n
// subsets; for data-dependent radii such as the empirical-Bernstein one
ExactProbability exact_radius_exceedance(
    const std::vector<double>& pop, std::int64_t n,
    const std::function<double(const std::vector<double>&)>& radius);

// Largest |E[Z*_k | first k-1 draws] - Z*_{k-1}| over every ordered prefix,
// k in [1, N-1], with Z*_0 = 0. Z*_k = (prefix sum - k*mu) / (N - k).
double check_forward_martingale(const std::vector<double>& pop);

// Largest |E[Z_k | draws k+2..N] - Z_{k+1}| over every ordered suffix,
// k in [1, N-1]. Z_k = (prefix sum - k*mu) / k.
double check_reverse_martingale(const std::vector<double>& pop);

// Largest discrepancy in the conditional second-moment identities:
// E[(X_k - mu)^2 | first k-1]  = sigma^2 - Q*_{k-1}   (k in [1, N])
// E[(X_{k+1} - mu)^2 | k+2..N] = sigma^2 + Q_{k+1}    (k in [1, N-1])
// where Q_j (resp. Q*_j) divides sum_{i<=j} ((X_i-mu)^2 - sigma^2) by j
// (resp. by N-j).
double check_conditional_variance(const std::vector<double>& pop);

// E f(sum of n draws) without replacement (unordered subsets, equal weight)
// and with replacement (all pop_size^n tuples, equal weight)
std::pair<double, double> reduction_expectations(
    const std::vector<double>& pop, std::int64_t n,
    const std::function<double(double)>& f);

// Convex test battery (x^2, |x|, exp(+-x), exp(+-x/2)) on mu-centered sums;
// returns the largest relative excess of the without-replacement expectation
// over the with-replacement one (<= 0 when the reduction holds cleanly).
double reduction_violation(const std::vector<double>& pop, std::int64_t n);

struct MgfCheck {
  // max over the 20-point lambda grid (0, 5] of log exact_mgf minus each
  // applicable closed-form log-mgf bound
  double max_log_mgf_excess = 0.0;
  // max over the grid of the two exponential-supermartingale expectations;
  // each must be <= 1
  double max_supermartingale = 0.0;
};

// Dominance of the closed-form mgf bounds plus the permutation-enumerated
// supermartingale expectations
// E exp(lambda n Z_n - lambda^2 sum_k phi(2R lambda n/(N-k)) n^2/(N-k)^2 sigma2_{<,N-k+1})
// (k = 1..N-n, prefix-set variances) and
// E exp(lambda n Z_n - lambda^2 sum_k phi(2R lambda (N-n)/(N-k)) (N-n)^2/(N-k)^2 sigma2_{>,k})
// (k = 1..n for n < N, empty at n = N where the scale factor vanishes).
MgfCheck mgf_check(const std::vector<double>& pop, std::int64_t n);

// Per-step path quantities along one fixed draw order (a permutation of
// 0..N-1). Rows are 1-based in k; row N stores 0 for the *-normalized
// quantities whose remaining count is 0.
struct PathRow {
  std::int64_t k = 0;
  double z = 0.0;          // prefix mean minus mu
  double zstar = 0.0;      // prefix excess normalized by the remaining count
  double q = 0.0;          // mean over the prefix of ((x - mu)^2 - sigma^2)
  double qstar = 0.0;      // same numerator normalized by the remaining count
  double mu_gt = 0.0;      // conditional mean of draw k given the first k-1
  double sigma2_gt = 0.0;  // conditional variance of draw k given the first k-1
  double mu_lt = 0.0;      // conditional mean of draw k given draws k+1..N
  double sigma2_lt = 0.0;  // conditional variance of draw k given draws k+1..N
};

std::vector<PathRow> path_stats(const std::vector<double>& pop,
                                const std::vector<std::int64_t>& order);

// Frequency form of the variance-envelope guarantees: the returned fraction
// of equally likely ordered paths on which the running conditional variance
// strictly exceeds the envelope at level delta must be <= delta. Backward
// watches max over k in [1, n] of sigma2_{>,k}; forward (n <= N-1) watches
// max over k in [n, N-1] of sigma2_{<,k+1}.
double envelope_violation_backward(const std::vector<double>& pop, std::int64_t n,
                                   double delta);
double envelope_violation_forward(const std::vector<double>& pop, std::int64_t n,
                                  double delta);

}  // namespace swr::oracle
