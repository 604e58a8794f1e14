#include "swr/prefix_stats.hpp"

namespace swr {

double empirical_variance(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("empirical_variance needs data");
  double m = 0.0;
  for (double x : values) m += x;
  m /= double(values.size());
  double acc = 0.0;
  for (double x : values) acc += (x - m) * (x - m);
  return acc / double(values.size());
}

VnDecomposition decompose_vn(std::span<const double> values, double mu) {
  if (values.empty()) throw std::invalid_argument("decompose_vn needs data");
  double m = 0.0;
  for (double x : values) m += x;
  m /= double(values.size());
  double vn = 0.0;
  for (double x : values) vn += (x - mu) * (x - mu);
  vn /= double(values.size());
  double bias_sq = (m - mu) * (m - mu);
  return {vn, bias_sq, empirical_variance(values)};
}

}  // namespace swr
