#include "vandermetric/monotone_norm.hpp"

#include <algorithm>
#include <cmath>

#include "vandermetric/errors.hpp"

namespace vandermetric {

MonotoneNorm::MonotoneNorm(double p, std::vector<double> weights) : p_(p), weights_(std::move(weights)) {
  if (std::isnan(p_) || p_ < 1.0) throw ArgumentError("monotone norm: p must lie in [1, inf]");
  for (double w : weights_) {
    if (!std::isfinite(w) || w <= 0.0) throw ArgumentError("monotone norm: weights must be positive and finite");
  }
}

double MonotoneNorm::operator()(std::span<const double> v) const {
  if (!weights_.empty() && weights_.size() != v.size()) {
    throw ArgumentError("monotone norm: " + std::to_string(weights_.size()) + " weights for a vector of dimension " +
                        std::to_string(v.size()));
  }
  auto w = [&](std::size_t i) { return weights_.empty() ? 1.0 : weights_[i]; };

  if (is_max()) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, w(i) * std::abs(v[i]));
    return m;
  }
  if (p_ == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += w(i) * std::abs(v[i]);
    return s;
  }

  auto naive = [&](double unit) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double a = std::abs(v[i]) / unit;
      s += w(i) * (p_ == 2.0 ? a * a : std::pow(a, p_));
    }
    return unit * (p_ == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p_));
  };
  const double direct = naive(1.0);
  double largest = 0.0;
  for (double x : v) largest = std::max(largest, std::abs(x));
  if (largest == 0.0 || std::isinf(largest)) return largest;
  // Overflow or underflow of the powered sum: rescale by the largest entry.
  if (!std::isfinite(direct) || direct == 0.0 || direct < 1e-150 * largest) return naive(largest);
  return direct;
}

}  // namespace vandermetric
