#include "swr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "swr/bounds.hpp"

namespace swr::oracle {

namespace {

constexpr std::int64_t kSubsetBudget = 1'000'000;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

struct Moments {
  double total = 0.0;
  double total_sq = 0.0;
  double mu = 0.0;
  double sigma2 = 0.0;
  double range = 0.0;
};

Moments moments_of(const std::vector<double>& pop) {
  require(pop.size() >= 2, "oracle populations need at least 2 values");
  Moments m;
  for (double x : pop) {
    m.total += x;
    m.total_sq += x * x;
  }
  m.mu = m.total / double(pop.size());
  double acc = 0.0;
  for (double x : pop) acc += (x - m.mu) * (x - m.mu);
  m.sigma2 = acc / double(pop.size());
  auto [lo, hi] = std::minmax_element(pop.begin(), pop.end());
  m.range = *hi - *lo;
  return m;
}

// C(N, n), or cap + 1 as soon as it would exceed cap
std::int64_t binomial_capped(std::int64_t N, std::int64_t n, std::int64_t cap) {
  n = std::min(n, N - n);
  if (n < 0) return 0;
  std::int64_t c = 1;
  for (std::int64_t i = 1; i <= n; ++i) {
    __int128 t = (__int128)c * (N - n + i) / i;  // exact: C(m,i) = C(m-1,i-1)*m/i
    if (t > cap) return cap + 1;
    c = std::int64_t(t);
  }
  return c;
}

void check_subset_budget(std::int64_t N, std::int64_t n) {
  require(binomial_capped(N, n, kSubsetBudget) <= kSubsetBudget,
          "enumeration budget exceeded: C(pop_size, sample_size) > 1e6");
}

void check_sample_size(std::int64_t N, std::int64_t n) {
  require(N >= 2, "oracle populations need at least 2 values");
  require(n >= 1 && n <= N, "sample_size must lie in [1, pop_size]");
}

void check_ordered_budget(std::int64_t N) {
  require(N >= 2 && N <= 8, "ordered enumeration needs 2 <= pop_size <= 8");
}

// visit the value sum of every size-m index subset (one call with 0.0 if m = 0)
template <class F>
void for_each_subset_sum(const std::vector<double>& pop, std::int64_t m, F&& f) {
  const std::int64_t N = std::int64_t(pop.size());
  if (m == 0) {
    f(0.0);
    return;
  }
  auto dfs = [&](auto&& self, std::int64_t first, std::int64_t left, double s) -> void {
    if (left == 0) {
      f(s);
      return;
    }
    for (std::int64_t i = first; i <= N - left; ++i)
      self(self, i + 1, left - 1, s + pop[std::size_t(i)]);
  };
  dfs(dfs, 0, m, 0.0);
}

}  // namespace

ExactProbability exact_exceedance(const std::vector<double>& pop, std::int64_t n,
                                  double eps, bool strict) {
  const std::int64_t N = std::int64_t(pop.size());
  check_sample_size(N, n);
  require(eps >= 0.0, "eps must be >= 0");
  check_subset_budget(N, n);

  const Moments m = moments_of(pop);
  const double threshold = eps * double(n) * double(N);
  // enumerate the smaller side; with the complement the sample sum is T - s
  const bool flip = n > N - n;
  const std::int64_t side = flip ? N - n : n;

  ExactProbability out{0, 0};
  for_each_subset_sum(pop, side, [&](double s) {
    // N * s_n - n * T, exact for integer-valued populations
    double lhs = flip ? double(N - n) * m.total - double(N) * s
                      : double(N) * s - double(n) * m.total;
    ++out.total;
    out.favorable += strict ? (lhs > threshold) : (lhs >= threshold);
  });
  return out;
}

ExactProbability exact_radius_exceedance(
    const std::vector<double>& pop, std::int64_t n,
    const std::function<double(const std::vector<double>&)>& radius) {
  const std::int64_t N = std::int64_t(pop.size());
  check_sample_size(N, n);
  check_subset_budget(N, n);
  const Moments m = moments_of(pop);

  ExactProbability out{0, 0};
  std::vector<double> current;
  current.reserve(std::size_t(n));
  auto dfs = [&](auto&& self, std::int64_t first, std::int64_t left, double s) -> void {
    if (left == 0) {
      ++out.total;
      out.favorable += (s / double(n) - m.mu) > radius(current);
      return;
    }
    for (std::int64_t i = first; i <= N - left; ++i) {
      current.push_back(pop[std::size_t(i)]);
      self(self, i + 1, left - 1, s + pop[std::size_t(i)]);
      current.pop_back();
    }
  };
  dfs(dfs, 0, n, 0.0);
  return out;
}

double exact_mgf(const std::vector<double>& pop, std::int64_t n, double lambda) {
  const std::int64_t N = std::int64_t(pop.size());
  check_sample_size(N, n);
  check_subset_budget(N, n);

  const Moments m = moments_of(pop);
  const bool flip = n > N - n;
  const std::int64_t side = flip ? N - n : n;

  long double acc = 0.0L;
  std::int64_t count = 0;
  for_each_subset_sum(pop, side, [&](double s) {
    double centered = flip ? (double(N - n) * m.total - double(N) * s) / double(N)
                           : (double(N) * s - double(n) * m.total) / double(N);
    acc += std::exp(lambda * centered);
    ++count;
  });
  return double(acc / (long double)(count));
}

double check_forward_martingale(const std::vector<double>& pop) {
  const int N = int(pop.size());
  check_ordered_budget(N);
  const Moments m = moments_of(pop);

  double worst = 0.0;
  // node: ordered prefix of `drawn` values with sum ps; check at k = drawn+1
  auto dfs = [&](auto&& self, unsigned mask, double ps, int drawn) -> void {
    const int k = drawn + 1;
    if (k > N - 1) return;  // Z*_k needs a nonzero remaining count
    double prev = drawn == 0 ? 0.0 : (ps - double(drawn) * m.mu) / double(N - drawn);
    double acc = 0.0;
    int avail = 0;
    for (int i = 0; i < N; ++i) {
      if (mask >> i & 1) continue;
      acc += (ps + pop[std::size_t(i)] - double(k) * m.mu) / double(N - k);
      ++avail;
    }
    worst = std::max(worst, std::fabs(acc / double(avail) - prev));
    if (k > N - 2) return;
    for (int i = 0; i < N; ++i)
      if (!(mask >> i & 1))
        self(self, mask | 1u << i, ps + pop[std::size_t(i)], drawn + 1);
  };
  dfs(dfs, 0u, 0.0, 0);
  return worst;
}

double check_reverse_martingale(const std::vector<double>& pop) {
  const int N = int(pop.size());
  check_ordered_budget(N);
  const Moments m = moments_of(pop);

  double worst = 0.0;
  for (int k = 1; k <= N - 1; ++k) {
    const int suffix_len = N - k - 1;  // draws k+2 .. N
    auto dfs = [&](auto&& self, unsigned mask, double ss, int taken) -> void {
      if (taken == suffix_len) {
        double sum_c = m.total - ss;  // sum over the k+1 undetermined values
        double z_next = (sum_c - double(k + 1) * m.mu) / double(k + 1);
        double acc = 0.0;
        int avail = 0;
        for (int i = 0; i < N; ++i) {
          if (mask >> i & 1) continue;
          // X_{k+1} = this value, so the first k sum to sum_c - value
          acc += (sum_c - pop[std::size_t(i)] - double(k) * m.mu) / double(k);
          ++avail;
        }
        worst = std::max(worst, std::fabs(acc / double(avail) - z_next));
        return;
      }
      for (int i = 0; i < N; ++i)
        if (!(mask >> i & 1))
          self(self, mask | 1u << i, ss + pop[std::size_t(i)], taken + 1);
    };
    dfs(dfs, 0u, 0.0, 0);
  }
  return worst;
}

double check_conditional_variance(const std::vector<double>& pop) {
  const int N = int(pop.size());
  check_ordered_budget(N);
  const Moments m = moments_of(pop);

  double worst = 0.0;

  // forward: E[(X_k - mu)^2 | first k-1] = sigma^2 - Q*_{k-1};
  // csq accumulates ((x - mu)^2 - sigma^2) over the prefix
  auto dfs_fwd = [&](auto&& self, unsigned mask, double csq, int drawn) -> void {
    const int k = drawn + 1;
    double qstar = drawn == 0 ? 0.0 : csq / double(N - drawn);
    double acc = 0.0;
    int avail = 0;
    for (int i = 0; i < N; ++i) {
      if (mask >> i & 1) continue;
      double d = pop[std::size_t(i)] - m.mu;
      acc += d * d;
      ++avail;
    }
    worst = std::max(worst, std::fabs(acc / double(avail) - (m.sigma2 - qstar)));
    if (k > N - 1) return;
    for (int i = 0; i < N; ++i) {
      if (mask >> i & 1) continue;
      double d = pop[std::size_t(i)] - m.mu;
      self(self, mask | 1u << i, csq + d * d - m.sigma2, drawn + 1);
    }
  };
  dfs_fwd(dfs_fwd, 0u, 0.0, 0);

  // reverse: E[(X_{k+1} - mu)^2 | suffix k+2..N] = sigma^2 + Q_{k+1}
  double csq_all = 0.0;
  for (double x : pop) csq_all += (x - m.mu) * (x - m.mu) - m.sigma2;
  for (int k = 1; k <= N - 1; ++k) {
    const int suffix_len = N - k - 1;
    auto dfs = [&](auto&& self, unsigned mask, double csq_suffix, int taken) -> void {
      if (taken == suffix_len) {
        double q_next = (csq_all - csq_suffix) / double(k + 1);
        double acc = 0.0;
        int avail = 0;
        for (int i = 0; i < N; ++i) {
          if (mask >> i & 1) continue;
          double d = pop[std::size_t(i)] - m.mu;
          acc += d * d;
          ++avail;
        }
        worst = std::max(worst, std::fabs(acc / double(avail) - (m.sigma2 + q_next)));
        return;
      }
      for (int i = 0; i < N; ++i) {
        if (mask >> i & 1) continue;
        double d = pop[std::size_t(i)] - m.mu;
        self(self, mask | 1u << i, csq_suffix + d * d - m.sigma2, taken + 1);
      }
    };
    dfs(dfs, 0u, 0.0, 0);
  }
  return worst;
}

std::pair<double, double> reduction_expectations(
    const std::vector<double>& pop, std::int64_t n,
    const std::function<double(double)>& f) {
  const std::int64_t N = std::int64_t(pop.size());
  check_sample_size(N, n);
  require(std::pow(double(N), double(n)) <= double(kSubsetBudget) + 0.5,
          "enumeration budget exceeded: pop_size^sample_size > 1e6");

  long double wo = 0.0L;
  std::int64_t subsets = 0;
  for_each_subset_sum(pop, n, [&](double s) {
    wo += f(s);
    ++subsets;
  });

  long double wi = 0.0L;
  std::int64_t tuples = 0;
  auto dfs = [&](auto&& self, std::int64_t depth, double s) -> void {
    if (depth == n) {
      wi += f(s);
      ++tuples;
      return;
    }
    for (double x : pop) self(self, depth + 1, s + x);
  };
  dfs(dfs, 0, 0.0);

  return {double(wo / (long double)(subsets)), double(wi / (long double)(tuples))};
}

double reduction_violation(const std::vector<double>& pop, std::int64_t n) {
  const Moments m = moments_of(pop);
  std::vector<double> centered;
  centered.reserve(pop.size());
  for (double x : pop) centered.push_back(x - m.mu);

  const std::function<double(double)> battery[] = {
      [](double x) { return x * x; },
      [](double x) { return std::fabs(x); },
      [](double x) { return std::exp(x); },
      [](double x) { return std::exp(-x); },
      [](double x) { return std::exp(0.5 * x); },
      [](double x) { return std::exp(-0.5 * x); },
  };
  double worst = -HUGE_VAL;
  for (const auto& f : battery) {
    auto [wo, wi] = reduction_expectations(centered, n, f);
    worst = std::max(worst, (wo - wi) / std::max(1.0, std::fabs(wi)));
  }
  return worst;
}

MgfCheck mgf_check(const std::vector<double>& pop, std::int64_t n) {
  const std::int64_t N = std::int64_t(pop.size());
  check_sample_size(N, n);
  require(N <= 7, "mgf suite needs pop_size <= 7");
  const Moments m = moments_of(pop);

  MgfCheck out{-HUGE_VAL, -HUGE_VAL};

  constexpr int kGrid = 20;
  double lambdas[kGrid];
  for (int i = 0; i < kGrid; ++i) lambdas[i] = 5.0 * double(i + 1) / double(kGrid);

  for (double lam : lambdas) {
    double log_mgf = std::log(exact_mgf(pop, n, lam));
    double imp = hs_log_mgf_bound(n, N, lam, m.range, MgfVariant::improved);
    out.max_log_mgf_excess = std::max(out.max_log_mgf_excess, log_mgf - imp);
    if (n <= N - 1) {
      double ser = hs_log_mgf_bound(n, N, lam, m.range, MgfVariant::serfling);
      out.max_log_mgf_excess = std::max(out.max_log_mgf_excess, log_mgf - ser);
    }
  }

  // Path-independent correction weights. The suffix-chain sum runs over
  // k = 1..N-n against prefix-set variances sigma2_{<,N-k+1}; the
  // history-chain sum over k = 1..n against remaining-set variances
  // sigma2_{>,k}, and is empty at n = N where its scale factor is 0.
  const std::int64_t n_hist = n < N ? n : 0;
  std::vector<std::vector<double>> w_suffix(kGrid), w_hist(kGrid);
  for (int li = 0; li < kGrid; ++li) {
    double lam = lambdas[li];
    w_suffix[std::size_t(li)].resize(std::size_t(N - n + 1), 0.0);
    for (std::int64_t k = 1; k <= N - n; ++k)
      w_suffix[std::size_t(li)][std::size_t(k)] =
          phi(2.0 * m.range * lam * double(n) / double(N - k)) * double(n) *
          double(n) / (double(N - k) * double(N - k));
    w_hist[std::size_t(li)].resize(std::size_t(n_hist + 1), 0.0);
    for (std::int64_t k = 1; k <= n_hist; ++k)
      w_hist[std::size_t(li)][std::size_t(k)] =
          phi(2.0 * m.range * lam * double(N - n) / double(N - k)) *
          double(N - n) * double(N - n) / (double(N - k) * double(N - k));
  }

  std::vector<int> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> ps(std::size_t(N + 1), 0.0), pss(std::size_t(N + 1), 0.0);
  std::vector<double> var_lt(std::size_t(N + 1), 0.0);  // prefix-set variances
  std::vector<double> var_gt(std::size_t(N + 1), 0.0);  // remaining-set variances
  std::vector<long double> e_suffix(kGrid, 0.0L), e_hist(kGrid, 0.0L);
  std::int64_t perms = 0;

  do {
    for (std::int64_t j = 1; j <= N; ++j) {
      double x = pop[std::size_t(order[std::size_t(j - 1)])];
      ps[std::size_t(j)] = ps[std::size_t(j - 1)] + x;
      pss[std::size_t(j)] = pss[std::size_t(j - 1)] + x * x;
    }
    for (std::int64_t j = 1; j <= N; ++j) {
      double mean = ps[std::size_t(j)] / double(j);
      double v = pss[std::size_t(j)] / double(j) - mean * mean;
      var_lt[std::size_t(j)] = v > 0.0 ? v : 0.0;
    }
    for (std::int64_t k = 1; k <= n_hist; ++k) {
      double cnt = double(N - k + 1);
      double mean = (m.total - ps[std::size_t(k - 1)]) / cnt;
      double v = (m.total_sq - pss[std::size_t(k - 1)]) / cnt - mean * mean;
      var_gt[std::size_t(k)] = v > 0.0 ? v : 0.0;
    }
    double zn_scaled = ps[std::size_t(n)] - double(n) * m.mu;  // n * Z_n
    for (int li = 0; li < kGrid; ++li) {
      double lam = lambdas[li];
      double corr_suffix = 0.0;
      for (std::int64_t k = 1; k <= N - n; ++k)
        corr_suffix += w_suffix[std::size_t(li)][std::size_t(k)] *
                       var_lt[std::size_t(N - k + 1)];
      double corr_hist = 0.0;
      for (std::int64_t k = 1; k <= n_hist; ++k)
        corr_hist += w_hist[std::size_t(li)][std::size_t(k)] * var_gt[std::size_t(k)];
      e_suffix[std::size_t(li)] += std::exp(lam * zn_scaled - lam * lam * corr_suffix);
      e_hist[std::size_t(li)] += std::exp(lam * zn_scaled - lam * lam * corr_hist);
    }
    ++perms;
  } while (std::next_permutation(order.begin(), order.end()));

  for (int li = 0; li < kGrid; ++li) {
    out.max_supermartingale =
        std::max(out.max_supermartingale,
                 double(e_suffix[std::size_t(li)] / (long double)(perms)));
    out.max_supermartingale =
        std::max(out.max_supermartingale,
                 double(e_hist[std::size_t(li)] / (long double)(perms)));
  }
  return out;
}

std::vector<PathRow> path_stats(const std::vector<double>& pop,
                                const std::vector<std::int64_t>& order) {
  const std::int64_t N = std::int64_t(pop.size());
  require(N >= 2, "oracle populations need at least 2 values");
  require(std::int64_t(order.size()) == N, "order must be a permutation of 0..N-1");
  std::vector<bool> seen(std::size_t(N), false);
  for (std::int64_t i : order) {
    require(i >= 0 && i < N && !seen[std::size_t(i)],
            "order must be a permutation of 0..N-1");
    seen[std::size_t(i)] = true;
  }
  const Moments m = moments_of(pop);

  std::vector<PathRow> rows;
  rows.reserve(std::size_t(N));
  double s = 0.0, ssq = 0.0, csq = 0.0;
  for (std::int64_t k = 1; k <= N; ++k) {
    double s_prev = s, ssq_prev = ssq;
    double x = pop[std::size_t(order[std::size_t(k - 1)])];
    s += x;
    ssq += x * x;
    csq += (x - m.mu) * (x - m.mu) - m.sigma2;

    PathRow row;
    row.k = k;
    double numer = double(N) * s - double(k) * m.total;
    row.z = numer / (double(k) * double(N));
    row.zstar = k < N ? numer / (double(N - k) * double(N)) : 0.0;
    row.q = csq / double(k);
    row.qstar = k < N ? csq / double(N - k) : 0.0;

    double rem_cnt = double(N - k + 1);
    row.mu_gt = (m.total - s_prev) / rem_cnt;
    double rem_mom = (m.total_sq - ssq_prev) / rem_cnt;
    double v_gt = rem_mom - row.mu_gt * row.mu_gt;
    row.sigma2_gt = v_gt > 0.0 ? v_gt : 0.0;

    row.mu_lt = s / double(k);
    double v_lt = ssq / double(k) - row.mu_lt * row.mu_lt;
    row.sigma2_lt = v_lt > 0.0 ? v_lt : 0.0;
    rows.push_back(row);
  }
  return rows;
}

double envelope_violation_backward(const std::vector<double>& pop, std::int64_t n,
                                   double delta) {
  const std::int64_t N = std::int64_t(pop.size());
  check_ordered_budget(N);
  check_sample_size(N, n);
  const Moments m = moments_of(pop);
  const double env =
      variance_envelope_backward(n, N, delta, std::sqrt(m.sigma2), m.range);
  // shared-rounding grace: the envelope meets the watched variance exactly in
  // the degenerate steps, and both sides round independently
  const double cap = env + 1e-12 * (1.0 + env);

  std::int64_t paths = 0, bad = 0;
  // at depth d (d values drawn), the next draw is k = d+1; watch k in [1, n]
  auto dfs = [&](auto&& self, unsigned mask, double ps, double pss, std::int64_t d,
                 bool hit) -> void {
    if (d == n) {
      ++paths;
      bad += hit;
      return;
    }
    if (!hit) {
      double cnt = double(N - d);
      double mean = (m.total - ps) / cnt;
      double v = (m.total_sq - pss) / cnt - mean * mean;
      hit = v > cap;
    }
    for (std::int64_t i = 0; i < N; ++i) {
      if (mask >> i & 1) continue;
      double x = pop[std::size_t(i)];
      self(self, mask | (1u << i), ps + x, pss + x * x, d + 1, hit);
    }
  };
  dfs(dfs, 0u, 0.0, 0.0, 0, false);
  return double(bad) / double(paths);
}

double envelope_violation_forward(const std::vector<double>& pop, std::int64_t n,
                                  double delta) {
  const std::int64_t N = std::int64_t(pop.size());
  check_ordered_budget(N);
  check_sample_size(N, n);
  require(n <= N - 1, "envelope_violation_forward needs sample_size <= pop_size - 1");
  const Moments m = moments_of(pop);
  const double env =
      variance_envelope_forward(n, N, delta, std::sqrt(m.sigma2), m.range);
  const double cap = env + 1e-12 * (1.0 + env);

  std::int64_t paths = 0, bad = 0;
  // watch prefix-set variances of sizes n+1 .. N along full permutations
  auto dfs = [&](auto&& self, unsigned mask, double ps, double pss, std::int64_t d,
                 bool hit) -> void {
    if (!hit && d >= n + 1) {
      double mean = ps / double(d);
      double v = pss / double(d) - mean * mean;
      hit = v > cap;
    }
    if (d == N) {
      ++paths;
      bad += hit;
      return;
    }
    for (std::int64_t i = 0; i < N; ++i) {
      if (mask >> i & 1) continue;
      double x = pop[std::size_t(i)];
      self(self, mask | (1u << i), ps + x, pss + x * x, d + 1, hit);
    }
  };
  dfs(dfs, 0u, 0.0, 0.0, 0, false);
  return double(bad) / double(paths);
}

}  // namespace swr::oracle
