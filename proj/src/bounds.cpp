#include "swr/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace swr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_nN(std::int64_t n, std::int64_t N) {
  require(N >= 2, "pop_size must be >= 2");
  require(n >= 1 && n <= N, "sample_size must lie in [1, pop_size]");
}

void check_delta(double delta) {
  require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]");
}

void check_delta_strict(double delta) {
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
}

// log(1/1) lands on +0.0, so delta = 1 yields clean zero radii
double log_inv(double delta) { return std::log(1.0 / delta); }

TailProbability make_tail(double raw_exponent, double slack) {
  return {std::min(1.0, std::exp(raw_exponent) + slack), raw_exponent, slack};
}

// Shared tail conventions once preconditions hold: eps = 0 gives the trivial
// bound (exp(0) + slack clamped to 1); a = b with eps > 0 gives probability 0
// since the sample mean cannot move.
std::optional<TailProbability> degenerate_tail(const PopulationSummary& s,
                                               double eps, double slack) {
  if (eps == 0.0) return make_tail(0.0, slack);
  if (s.range() == 0.0) return TailProbability{0.0, -kInf, 0.0};
  return std::nullopt;
}

}  // namespace

void validate(const PopulationSummary& s) {
  require(s.pop_size >= 2, "pop_size must be >= 2");
  require(s.sample_size >= 1 && s.sample_size <= s.pop_size,
          "sample_size must lie in [1, pop_size]");
  require(s.range_low <= s.range_high, "range_low must be <= range_high");
  if (s.variance) {
    double cap = s.range() * s.range() / 4.0;
    require(*s.variance >= 0.0, "variance must be >= 0");
    // Popoviciu: variance <= (b-a)^2/4, with a speck of rounding grace
    require(*s.variance <= cap * (1.0 + 1e-9) + 1e-300,
            "variance must be <= range^2/4");
  }
}

double phi(double c) {
  require(!std::isnan(c), "phi argument must not be NaN");
  if (std::fabs(c) < 0x1p-6) {
    // sum_{k>=0} c^k/(k+2)!; the first omitted term is below 1e-29 at |c| = 2^-6
    double term = 0.5;
    double acc = 0.5;
    for (int k = 1; k <= 10; ++k) {
      term *= c / double(k + 2);
      acc += term;
    }
    return acc;
  }
  return (std::expm1(c) - c) / (c * c);
}

double zeta(double u) {
  require(u >= 0.0, "zeta argument must be >= 0");
  if (u < 0x1p-6) {
    // sum_{m>=2} (-1)^m u^m / (m(m-1))
    double acc = u * u / 2.0;
    double pw = u * u;
    for (int m = 3; m <= 12; ++m) {
      pw *= -u;
      acc += pw / double(m * (m - 1));
    }
    return acc;
  }
  return (1.0 + u) * std::log1p(u) - u;
}

double rho(std::int64_t n, std::int64_t N) {
  check_nN(n, N);
  if (2 * n <= N) return double(N - n + 1) / double(N);
  // exact products for N well below 2^26, one rounded division
  return (double(n + 1) * double(N - n)) / (double(n) * double(N));
}

double kappa(std::int64_t n, std::int64_t N) {
  check_nN(n, N);
  if (2 * n <= N)
    return 4.0 / 3.0 +
           std::sqrt(double(n) * double(n - 1) / (double(N) * double(N - n + 1)));
  // at n = N the product is (-1)*0 = -0.0 and sqrt(-0.0) = -0.0, so 4/3 exactly
  return 4.0 / 3.0 +
         std::sqrt(double(N - n - 1) * double(N - n) / (double(n + 1) * double(N)));
}

ScaleFactors scale_factors(std::int64_t n, std::int64_t N) {
  check_nN(n, N);
  ScaleFactors out;
  out.f = double(n) / double(N);
  out.g = double(N - n) / double(n);
  out.rho = rho(n, N);
  out.kappa = kappa(n, N);
  return out;
}

TailProbability hoeffding_tail(const PopulationSummary& s, double eps) {
  validate(s);
  require(eps >= 0.0, "eps must be >= 0");
  if (auto t = degenerate_tail(s, eps, 0.0)) return *t;
  double r = s.range();
  double raw = -2.0 * double(s.sample_size) * eps * eps / (r * r);
  return make_tail(raw, 0.0);
}

TailProbability bernstein_tail(const PopulationSummary& s, double eps) {
  validate(s);
  require(s.variance.has_value(), "bernstein_tail needs summary.variance");
  require(eps >= 0.0, "eps must be >= 0");
  if (auto t = degenerate_tail(s, eps, 0.0)) return *t;
  double r = s.range();
  double raw = -double(s.sample_size) * eps * eps /
               (2.0 * *s.variance + (2.0 / 3.0) * r * eps);
  return make_tail(raw, 0.0);
}

double hs_log_mgf_bound(std::int64_t n, std::int64_t N, double lambda,
                        double range, MgfVariant variant) {
  check_nN(n, N);
  require(lambda > 0.0, "lambda must be > 0");
  require(range >= 0.0, "range must be >= 0");
  double base = range * range / 8.0 * lambda * lambda;
  if (variant == MgfVariant::serfling) {
    require(n <= N - 1, "serfling variant needs sample_size <= pop_size - 1");
    return base * double(n) * (1.0 - double(n - 1) / double(N));
  }
  return base * double(n + 1) * (1.0 - double(n) / double(N));
}

double serfling_sum_bound(std::int64_t n, std::int64_t N) {
  check_nN(n, N);
  require(n <= N - 1, "serfling_sum_bound needs sample_size <= pop_size - 1");
  return double(n) * (1.0 - double(n - 1) / double(N));
}

TailProbability hs_tail_forward(const PopulationSummary& s, double eps) {
  validate(s);
  require(s.sample_size <= s.pop_size - 1,
          "hs_tail_forward needs sample_size <= pop_size - 1");
  require(eps >= 0.0, "eps must be >= 0");
  if (auto t = degenerate_tail(s, eps, 0.0)) return *t;
  std::int64_t n = s.sample_size, N = s.pop_size;
  double r = s.range();
  // (1 - n/N)(1 + 1/n), written like rho's upper branch so inversion round-trips
  double factor = (double(n + 1) * double(N - n)) / (double(n) * double(N));
  double raw = -2.0 * double(n) * eps * eps / (factor * r * r);
  return make_tail(raw, 0.0);
}

TailProbability hs_tail_backward(const PopulationSummary& s, double eps) {
  validate(s);
  require(s.sample_size <= s.pop_size - 1,
          "hs_tail_backward needs sample_size <= pop_size - 1");
  require(eps >= 0.0, "eps must be >= 0");
  if (auto t = degenerate_tail(s, eps, 0.0)) return *t;
  std::int64_t n = s.sample_size, N = s.pop_size;
  double r = s.range();
  double factor = double(N - n + 1) / double(N);  // 1 - (n-1)/N
  double raw = -2.0 * double(n) * eps * eps / (factor * r * r);
  return make_tail(raw, 0.0);
}

ConfidenceRadius hs_radius(const PopulationSummary& s, double delta) {
  validate(s);
  check_delta(delta);
  std::int64_t n = s.sample_size, N = s.pop_size;
  double v = s.range() * std::sqrt(rho(n, N) * log_inv(delta) / (2.0 * double(n)));
  return {v, delta};
}

double c_delta(std::int64_t m, double delta, double sigma, double range) {
  require(m >= 1, "c_delta needs m >= 1");
  check_delta(delta);
  require(sigma >= 0.0, "sigma must be >= 0");
  require(range >= 0.0, "range must be >= 0");
  return sigma * range * std::sqrt(2.0 * log_inv(delta) / double(m));
}

double bs_gamma2(const PopulationSummary& s, double delta) {
  validate(s);
  require(s.variance.has_value(), "bs_gamma2 needs summary.variance");
  check_delta(delta);
  std::int64_t n = s.sample_size, N = s.pop_size;
  double f_prev = double(n - 1) / double(N);
  if (f_prev == 0.0) return *s.variance;  // n = 1: the c_delta term has weight 0
  double sigma = std::sqrt(*s.variance);
  return (1.0 - f_prev) * *s.variance +
         f_prev * c_delta(n - 1, delta, sigma, s.range());
}

double bs_gamma2_tilde(const PopulationSummary& s, double delta) {
  validate(s);
  require(s.variance.has_value(), "bs_gamma2_tilde needs summary.variance");
  require(s.sample_size <= s.pop_size - 1,
          "bs_gamma2_tilde needs sample_size <= pop_size - 1");
  check_delta(delta);
  std::int64_t n = s.sample_size, N = s.pop_size;
  double f = double(n) / double(N);
  double head = (1.0 - f) * (double(n + 1) / double(n)) * *s.variance;
  double w = double(N - n - 1) / double(n);
  if (w == 0.0) return head;  // n = N-1: the c_delta term has weight 0
  double sigma = std::sqrt(*s.variance);
  return head + (1.0 - f) * w * c_delta(N - n - 1, delta, sigma, s.range());
}

namespace {

TailProbability bs_tail_impl(const PopulationSummary& s, double eps, double delta,
                             std::optional<double> envelope_delta, bool forward) {
  validate(s);
  require(s.variance.has_value(), "bernstein-serfling tails need summary.variance");
  require(s.sample_size <= s.pop_size - 1,
          "bernstein-serfling tails need sample_size <= pop_size - 1");
  require(eps >= 0.0, "eps must be >= 0");
  check_delta(delta);
  double level = envelope_delta.value_or(delta);
  if (envelope_delta) check_delta(level);
  if (auto t = degenerate_tail(s, eps, level)) return *t;
  double g2 = forward ? bs_gamma2_tilde(s, level) : bs_gamma2(s, level);
  double r = s.range();
  double raw = -(double(s.sample_size) * eps * eps / 2.0) /
               (g2 + (2.0 / 3.0) * r * eps);
  return make_tail(raw, level);
}

}  // namespace

TailProbability bs_tail_backward(const PopulationSummary& s, double eps, double delta,
                                 std::optional<double> envelope_delta) {
  return bs_tail_impl(s, eps, delta, envelope_delta, false);
}

TailProbability bs_tail_forward(const PopulationSummary& s, double eps, double delta,
                                std::optional<double> envelope_delta) {
  return bs_tail_impl(s, eps, delta, envelope_delta, true);
}

ConfidenceRadius bs_radius(const PopulationSummary& s, double delta) {
  validate(s);
  require(s.variance.has_value(), "bs_radius needs summary.variance");
  check_delta(delta);
  std::int64_t n = s.sample_size, N = s.pop_size;
  double L = log_inv(delta);
  double sigma = std::sqrt(*s.variance);
  double v = sigma * std::sqrt(2.0 * rho(n, N) * L / double(n)) +
             kappa(n, N) * s.range() * L / double(n);
  return {v, 2.0 * delta};
}

double variance_envelope_backward(std::int64_t n, std::int64_t N, double delta,
                                  double sigma, double range) {
  check_nN(n, N);
  check_delta_strict(delta);
  require(sigma >= 0.0, "sigma must be >= 0");
  require(range >= 0.0, "range must be >= 0");
  double v = sigma * sigma;
  if (n == 1) return v;  // the weight (n-1)/(N-n+1) is 0
  double w = double(n - 1) / double(N - n + 1);
  return v + sigma * range * w * std::sqrt(2.0 * log_inv(delta) / double(n - 1));
}

double variance_envelope_forward(std::int64_t n, std::int64_t N, double delta,
                                 double sigma, double range) {
  check_nN(n, N);
  require(n <= N - 1, "variance_envelope_forward needs sample_size <= pop_size - 1");
  check_delta_strict(delta);
  require(sigma >= 0.0, "sigma must be >= 0");
  require(range >= 0.0, "range must be >= 0");
  double v = sigma * sigma;
  if (n == N - 1) return v;  // the weight (N-n-1)/(n+1) is 0
  double w = double(N - n - 1) / double(n + 1);
  return v + sigma * range * w * std::sqrt(2.0 * log_inv(delta) / double(N - n - 1));
}

double sigma_upper(std::int64_t n, std::int64_t N, double delta,
                   double sigma_hat, double range) {
  check_nN(n, N);
  check_delta_strict(delta);
  require(sigma_hat >= 0.0, "sigma_hat must be >= 0");
  require(range >= 0.0, "range must be >= 0");
  return sigma_hat + range * (1.0 + std::sqrt(1.0 + rho(n, N))) *
                         std::sqrt(std::log(3.0 / delta) / (2.0 * double(n)));
}

const double ebs_kappa = 7.0 / 3.0 + 3.0 / std::sqrt(2.0);

ConfidenceRadius ebs_radius(std::int64_t n, std::int64_t N, double delta,
                            double sigma_hat, double range) {
  check_nN(n, N);
  check_delta(delta);
  require(sigma_hat >= 0.0, "sigma_hat must be >= 0");
  require(range >= 0.0, "range must be >= 0");
  double L = log_inv(delta);
  double v = sigma_hat * std::sqrt(2.0 * rho(n, N) * L / double(n)) +
             ebs_kappa * range * L / double(n);
  return {v, 5.0 * delta};
}

}  // namespace swr
