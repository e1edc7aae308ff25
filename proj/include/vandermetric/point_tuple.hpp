#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace vandermetric {

using Complex = std::complex<double>;

/// An ordered tuple of n >= 2 points in R^m, stored row-major.
///
/// Repeated points are legal; nothing is deduplicated. Points of dimension 1
/// or 2 can be viewed as complex scalars (x or x + iy).
class PointTuple {
 public:
  PointTuple(std::size_t dimension, std::vector<double> coordinates);
  PointTuple(std::initializer_list<std::vector<double>> points);
  explicit PointTuple(const std::vector<std::vector<double>>& points);

  static PointTuple from_complex(std::span<const Complex> points);

  std::size_t size() const noexcept { return coords_.size() / dim_; }
  std::size_t dimension() const noexcept { return dim_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coordinates() const noexcept { return coords_; }

  /// Copy with point i replaced by y.
  PointTuple replaced(std::size_t i, std::span<const double> y) const;
  /// Copy with points permuted: result[k] = (*this)[order[k]].
  PointTuple permuted(std::span<const std::size_t> order) const;

  /// Complex view; requires dimension 1 or 2.
  std::vector<Complex> to_complex() const;

  std::vector<std::vector<double>> rows() const;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

/// Validates a complex tuple: n >= 2 and all parts finite.
void validate_complex_tuple(std::span<const Complex> z);

}  // namespace vandermetric
