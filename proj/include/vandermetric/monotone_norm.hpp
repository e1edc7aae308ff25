#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace vandermetric {

/// Weighted p-norm on R^k, p in [1, inf]. With strictly positive weights
/// these norms are monotone: |u| <= |v| componentwise implies ||u|| <= ||v||.
class MonotoneNorm {
 public:
  static constexpr double kMax = std::numeric_limits<double>::infinity();

  MonotoneNorm() = default;
  explicit MonotoneNorm(double p, std::vector<double> weights = {});

  static MonotoneNorm euclidean() { return MonotoneNorm(2.0); }
  static MonotoneNorm max_norm() { return MonotoneNorm(kMax); }

  double p() const noexcept { return p_; }
  bool is_max() const noexcept { return p_ == kMax; }
  /// Empty means all weights are 1, for any dimension.
  const std::vector<double>& weights() const noexcept { return weights_; }

  double operator()(std::span<const double> v) const;

 private:
  double p_ = 2.0;
  std::vector<double> weights_;
};

}  // namespace vandermetric
