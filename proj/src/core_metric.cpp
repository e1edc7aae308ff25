#include "vandermetric/core_metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vandermetric/errors.hpp"

namespace vandermetric {

namespace {

constexpr std::size_t kDirectProductMaxN = 12;
constexpr double kPartialLo = 1e-300;
constexpr double kPartialHi = 1e300;

bool complex_less(const Complex& a, const Complex& b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

std::vector<std::size_t> sorted_order(std::size_t n, auto less) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), less);
  return order;
}

// sum_{j<i} log dist(order[j], order[i]); -inf on a zero factor.
double canonical_log_sum(const std::vector<std::size_t>& order, auto dist) {
  double s = 0.0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    for (std::size_t i = j + 1; i < order.size(); ++i) {
      const double d = dist(order[j], order[i]);
      if (d == 0.0) return -INFINITY;
      s += std::log(d);
    }
  }
  return s;
}

// prod_{j<i} dist(order[j], order[i]) under the overflow policy.
double canonical_product(const std::vector<std::size_t>& order, auto dist) {
  const std::size_t n = order.size();
  if (n <= kDirectProductMaxN) {
    double p = 1.0;
    bool in_range = true;
    for (std::size_t j = 0; j < n && in_range; ++j) {
      for (std::size_t i = j + 1; i < n; ++i) {
        const double d = dist(order[j], order[i]);
        if (d == 0.0) return 0.0;
        p *= d;
        if (p < kPartialLo || p > kPartialHi) {
          in_range = false;
          break;
        }
      }
    }
    if (in_range) return p;
  }
  return std::exp(canonical_log_sum(order, dist));
}

std::size_t pair_factor_count(std::size_t n) { return n * (n - 1) / 2; }

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    const double d = a[r] - b[r];
    s += d * d;
  }
  return std::sqrt(s);
}

bool span_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<std::size_t> sorted_point_order(const PointTuple& t) {
  return sorted_order(t.size(), [&](std::size_t a, std::size_t b) { return span_less(t.point(a), t.point(b)); });
}

double root_from(double value, double log_value, std::size_t n) {
  const double exponent = 1.0 / static_cast<double>(pair_factor_count(n));
  if (value == 0.0) return 0.0;
  if (std::isfinite(value) && value >= kPartialLo && value <= kPartialHi) return std::pow(value, exponent);
  return std::exp(log_value * exponent);
}

}  // namespace

double vandermonde_metric(std::span<const Complex> z) {
  validate_complex_tuple(z);
  const auto order = sorted_order(z.size(), [&](std::size_t a, std::size_t b) { return complex_less(z[a], z[b]); });
  return canonical_product(order, [&](std::size_t a, std::size_t b) { return std::abs(z[b] - z[a]); });
}

double vandermonde_metric_log(std::span<const Complex> z) {
  validate_complex_tuple(z);
  const auto order = sorted_order(z.size(), [&](std::size_t a, std::size_t b) { return complex_less(z[a], z[b]); });
  return canonical_log_sum(order, [&](std::size_t a, std::size_t b) { return std::abs(z[b] - z[a]); });
}

double root_metric(std::span<const Complex> z) {
  const double d = vandermonde_metric(z);
  if (d == 0.0) return 0.0;
  const bool direct = std::isfinite(d) && d >= kPartialLo && d <= kPartialHi;
  return root_from(d, direct ? 0.0 : vandermonde_metric_log(z), z.size());
}

Complex vandermonde_determinant(std::span<const Complex> z) {
  validate_complex_tuple(z);
  Complex v = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    for (std::size_t i = j + 1; i < z.size(); ++i) v *= z[i] - z[j];
  }
  return v;
}

namespace {

void require_distinct_nodes(std::span<const Complex> z, Complex y) {
  validate_complex_tuple(z);
  if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) throw ArgumentError("cramer: non-finite y");
  for (std::size_t j = 0; j < z.size(); ++j) {
    for (std::size_t i = j + 1; i < z.size(); ++i) {
      if (z[i] == z[j]) {
        throw SingularityError("cramer: nodes " + std::to_string(j) + " and " + std::to_string(i) +
                               " coincide; the Vandermonde determinant vanishes");
      }
    }
  }
}

}  // namespace

std::vector<Complex> cramer_coefficients(std::span<const Complex> z, Complex y) {
  require_distinct_nodes(z, y);
  const Complex denom = vandermonde_determinant(z);
  std::vector<Complex> nodes(z.begin(), z.end());
  std::vector<Complex> a(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    nodes[i] = y;
    a[i] = vandermonde_determinant(nodes) / denom;
    nodes[i] = z[i];
  }
  return a;
}

std::vector<Complex> lagrange_coefficients(std::span<const Complex> z, Complex y) {
  require_distinct_nodes(z, y);
  std::vector<Complex> a(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    Complex l = 1.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j != k) l *= (y - z[j]) / (z[k] - z[j]);
    }
    a[k] = l;
  }
  return a;
}

double euclidean_3metric(std::span<const double> x1, std::span<const double> x2, std::span<const double> x3) {
  if (x1.size() != x2.size() || x1.size() != x3.size()) {
    throw ArgumentError("euclidean 3-metric: points of differing dimension");
  }
  if (x1.empty()) throw ArgumentError("euclidean 3-metric: empty points");
  std::vector<double> coords;
  for (auto p : {x1, x2, x3}) coords.insert(coords.end(), p.begin(), p.end());
  return pairwise_product_metric(PointTuple(x1.size(), std::move(coords)));
}

double pairwise_product_metric(const PointTuple& t) {
  const auto order = sorted_point_order(t);
  return canonical_product(order, [&](std::size_t a, std::size_t b) { return euclidean_distance(t.point(a), t.point(b)); });
}

double pairwise_root_metric(const PointTuple& t) {
  const auto order = sorted_point_order(t);
  auto dist = [&](std::size_t a, std::size_t b) { return euclidean_distance(t.point(a), t.point(b)); };
  const double d = canonical_product(order, dist);
  if (d == 0.0) return 0.0;
  const bool direct = std::isfinite(d) && d >= kPartialLo && d <= kPartialHi;
  return root_from(d, direct ? 0.0 : canonical_log_sum(order, dist), t.size());
}

double componentwise_metric(const PointTuple& t, const MonotoneNorm& norm) {
  std::vector<double> per_coordinate(t.dimension());
  std::vector<Complex> column(t.size());
  for (std::size_t r = 0; r < t.dimension(); ++r) {
    for (std::size_t i = 0; i < t.size(); ++i) column[i] = Complex(t.point(i)[r], 0.0);
    per_coordinate[r] = vandermonde_metric(column);
  }
  return norm(per_coordinate);
}

double product_metric_value(double dx, double dy, const MonotoneNorm& norm) {
  if (!norm.weights().empty() && norm.weights().size() != 2) {
    throw ArgumentError("product metric: the norm must act on R^2");
  }
  const double v[2] = {dx, dy};
  return norm(v);
}

double lp_function_metric(const std::vector<std::vector<double>>& samples, std::span<const double> weights,
                          double p) {
  if (samples.size() < 2) throw ArgumentError("L^p metric: need at least 2 functions");
  if (std::isnan(p) || p < 1.0 || std::isinf(p)) throw ArgumentError("L^p metric: p must be a finite real >= 1");
  const std::size_t grid = weights.size();
  if (grid == 0) throw ArgumentError("L^p metric: empty grid");
  double total_weight = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw ArgumentError("L^p metric: weights must be finite and >= 0");
    total_weight += w;
  }
  if (!std::isfinite(total_weight)) throw ArgumentError("L^p metric: weights must have a finite sum");
  for (const auto& f : samples) {
    if (f.size() != grid) throw ArgumentError("L^p metric: sample length differs from the weight grid");
  }
  std::vector<Complex> values(samples.size());
  double integral = 0.0;
  for (std::size_t g = 0; g < grid; ++g) {
    for (std::size_t i = 0; i < samples.size(); ++i) values[i] = Complex(samples[i][g], 0.0);
    const double d = vandermonde_metric(values);
    integral += weights[g] * (p == 1.0 ? d : std::pow(d, p));
  }
  if (p == 1.0) return integral;
  if (p == 2.0) return std::sqrt(integral);
  return std::pow(integral, 1.0 / p);
}

MetricReport extended_inequality_gap(std::span<const Complex> z, Complex y, int k, double tolerance) {
  validate_complex_tuple(z);
  const int n = static_cast<int>(z.size());
  if (k < 0 || k > n - 1) {
    throw ArgumentError("extended inequality: k must lie in [0, " + std::to_string(n - 1) + "], got " +
                        std::to_string(k));
  }
  const double lhs = std::pow(std::abs(y), k) * vandermonde_metric(z);
  std::vector<Complex> replaced(z.begin(), z.end());
  double rhs = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    replaced[i] = y;
    rhs += std::pow(std::abs(z[i]), k) * vandermonde_metric(replaced);
    replaced[i] = z[i];
  }
  nlohmann::json points = nlohmann::json::array();
  for (const auto& v : z) points.push_back({v.real(), v.imag()});
  nlohmann::json inputs{{"z", points}, {"y", {y.real(), y.imag()}}, {"k", k}};
  return make_report("extended", std::move(inputs), lhs, rhs, tolerance);
}

}  // namespace vandermetric
