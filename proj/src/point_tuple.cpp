#include "vandermetric/point_tuple.hpp"

#include <cmath>
#include <string>

#include "vandermetric/errors.hpp"

namespace vandermetric {

namespace {

void check_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw ArgumentError("point tuple: non-finite coordinate");
  }
}

std::vector<double> flatten(const std::vector<std::vector<double>>& points, std::size_t& dim) {
  if (points.empty()) throw ArgumentError("point tuple: no points");
  dim = points.front().size();
  std::vector<double> out;
  out.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.size() != dim) throw ArgumentError("point tuple: points of differing dimension");
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

}  // namespace

PointTuple::PointTuple(std::size_t dimension, std::vector<double> coordinates)
    : dim_(dimension), coords_(std::move(coordinates)) {
  if (dim_ == 0) throw ArgumentError("point tuple: dimension must be >= 1");
  if (coords_.size() % dim_ != 0) throw ArgumentError("point tuple: coordinate count not a multiple of dimension");
  if (size() < 2) throw ArgumentError("point tuple: need at least 2 points, got " + std::to_string(size()));
  check_finite(coords_);
}

PointTuple::PointTuple(std::initializer_list<std::vector<double>> points)
    : PointTuple(std::vector<std::vector<double>>(points)) {}

PointTuple::PointTuple(const std::vector<std::vector<double>>& points) : dim_(0) {
  auto coords = flatten(points, dim_);
  *this = PointTuple(dim_, std::move(coords));
}

PointTuple PointTuple::from_complex(std::span<const Complex> points) {
  std::vector<double> coords;
  coords.reserve(2 * points.size());
  for (const auto& z : points) {
    coords.push_back(z.real());
    coords.push_back(z.imag());
  }
  return PointTuple(2, std::move(coords));
}

PointTuple PointTuple::replaced(std::size_t i, std::span<const double> y) const {
  if (y.size() != dim_) {
    throw ArgumentError("point tuple: replacement point has dimension " + std::to_string(y.size()) +
                        ", expected " + std::to_string(dim_));
  }
  if (i >= size()) throw ArgumentError("point tuple: replacement index out of range");
  check_finite(y);
  auto coords = coords_;
  std::copy(y.begin(), y.end(), coords.begin() + static_cast<std::ptrdiff_t>(i * dim_));
  return PointTuple(dim_, std::move(coords));
}

PointTuple PointTuple::permuted(std::span<const std::size_t> order) const {
  if (order.size() != size()) throw ArgumentError("point tuple: permutation size mismatch");
  std::vector<double> coords;
  coords.reserve(coords_.size());
  for (std::size_t k : order) {
    if (k >= size()) throw ArgumentError("point tuple: permutation index out of range");
    auto p = point(k);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointTuple(dim_, std::move(coords));
}

std::vector<Complex> PointTuple::to_complex() const {
  if (dim_ > 2) throw ArgumentError("point tuple: complex view needs dimension 1 or 2");
  std::vector<Complex> z;
  z.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto p = point(i);
    z.emplace_back(p[0], dim_ == 2 ? p[1] : 0.0);
  }
  return z;
}

std::vector<std::vector<double>> PointTuple::rows() const {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    auto p = point(i);
    out.emplace_back(p.begin(), p.end());
  }
  return out;
}

void validate_complex_tuple(std::span<const Complex> z) {
  if (z.size() < 2) throw ArgumentError("vandermonde: need at least 2 points, got " + std::to_string(z.size()));
  for (const auto& v : z) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ArgumentError("vandermonde: non-finite point");
    }
  }
}

}  // namespace vandermetric
