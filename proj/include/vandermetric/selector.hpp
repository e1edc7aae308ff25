#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vandermetric/monotone_norm.hpp"
#include "vandermetric/point_tuple.hpp"
#include "vandermetric/report.hpp"

namespace vandermetric {

enum class MetricKind {
  vandermonde,    // complex d_V, points of dimension 1 or 2
  root,           // complex root metric
  euclidean3,     // n = 3, any dimension
  pairwise,       // full pairwise product of Euclidean distances
  pairwise_root,  // pairwise^(2/(n(n-1)))
  componentwise,  // norm of per-coordinate d_V
  generalized,    // norm of the complex-product-projection form
  product,        // norm of (factor0 on coords [0, split), factor1 on the rest)
};

/// Names any metric of the library, with the parameters it needs.
struct MetricSelector {
  MetricKind kind = MetricKind::vandermonde;
  MonotoneNorm norm = MonotoneNorm::euclidean();
  std::size_t split = 0;
  std::vector<MetricSelector> factors;

  static MetricSelector of(MetricKind kind, MonotoneNorm norm = MonotoneNorm::euclidean()) {
    return MetricSelector{kind, std::move(norm), 0, {}};
  }
  static MetricSelector product(MetricSelector x, MetricSelector y, std::size_t split,
                                MonotoneNorm norm);
};

double evaluate(const MetricSelector& metric, const PointTuple& t);

/// ||(dx(tx), dy(ty))|| for tuples of equal size: the product pseudo n-metric
/// on X x Y.
double product_metric(const MetricSelector& dx, const MetricSelector& dy, const MonotoneNorm& norm,
                      const PointTuple& tx, const PointTuple& ty);

/// lhs = d(t), rhs = sum_i d(t with x_i -> y).
MetricReport simplex_gap(const PointTuple& t, std::span<const double> y,
                         const MetricSelector& metric, double tolerance = kInequalityTol);

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& name);

nlohmann::json to_json(const MonotoneNorm& norm);
MonotoneNorm norm_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MetricSelector& metric);
MetricSelector selector_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PointTuple& t);
PointTuple tuple_from_json(const nlohmann::json& j);

}  // namespace vandermetric
