#include "vandermetric/selector.hpp"

#include <cmath>

#include "vandermetric/core_metric.hpp"
#include "vandermetric/errors.hpp"
#include "vandermetric/multilinear.hpp"

namespace vandermetric {

MetricSelector MetricSelector::product(MetricSelector x, MetricSelector y, std::size_t split, MonotoneNorm norm) {
  MetricSelector s;
  s.kind = MetricKind::product;
  s.norm = std::move(norm);
  s.split = split;
  s.factors = {std::move(x), std::move(y)};
  return s;
}

namespace {

PointTuple columns(const PointTuple& t, std::size_t begin, std::size_t end) {
  std::vector<double> coords;
  coords.reserve(t.size() * (end - begin));
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto p = t.point(i);
    coords.insert(coords.end(), p.begin() + static_cast<std::ptrdiff_t>(begin),
                  p.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return PointTuple(end - begin, std::move(coords));
}

}  // namespace

double evaluate(const MetricSelector& metric, const PointTuple& t) {
  switch (metric.kind) {
    case MetricKind::vandermonde:
      return vandermonde_metric(t.to_complex());
    case MetricKind::root:
      return root_metric(t.to_complex());
    case MetricKind::euclidean3:
      if (t.size() != 3) throw ArgumentError("euclidean3 metric takes exactly 3 points");
      return euclidean_3metric(t.point(0), t.point(1), t.point(2));
    case MetricKind::pairwise:
      return pairwise_product_metric(t);
    case MetricKind::pairwise_root:
      return pairwise_root_metric(t);
    case MetricKind::componentwise:
      return componentwise_metric(t, metric.norm);
    case MetricKind::generalized:
      return multilinear::generalized_metric(multilinear::spec_for(t), t, metric.norm);
    case MetricKind::product: {
      if (metric.factors.size() != 2) throw ArgumentError("product metric needs two factor metrics");
      if (metric.split == 0 || metric.split >= t.dimension()) {
        throw ArgumentError("product metric: split must lie strictly inside the point dimension");
      }
      const double dx = evaluate(metric.factors[0], columns(t, 0, metric.split));
      const double dy = evaluate(metric.factors[1], columns(t, metric.split, t.dimension()));
      return product_metric_value(dx, dy, metric.norm);
    }
  }
  throw ArgumentError("unknown metric kind");
}

double product_metric(const MetricSelector& dx, const MetricSelector& dy, const MonotoneNorm& norm,
                      const PointTuple& tx, const PointTuple& ty) {
  if (tx.size() != ty.size()) throw ArgumentError("product metric: tuples of differing size");
  return product_metric_value(evaluate(dx, tx), evaluate(dy, ty), norm);
}

MetricReport simplex_gap(const PointTuple& t, std::span<const double> y, const MetricSelector& metric,
                         double tolerance) {
  if (y.size() != t.dimension()) {
    throw ArgumentError("simplex: y has dimension " + std::to_string(y.size()) + ", tuple has " +
                        std::to_string(t.dimension()));
  }
  const double lhs = evaluate(metric, t);
  double rhs = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) rhs += evaluate(metric, t.replaced(i, y));
  nlohmann::json inputs{{"metric", to_json(metric)}, {"tuple", to_json(t)},
                        {"y", std::vector<double>(y.begin(), y.end())}};
  return make_report("simplex", std::move(inputs), lhs, rhs, tolerance);
}

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::vandermonde: return "vandermonde";
    case MetricKind::root: return "root";
    case MetricKind::euclidean3: return "euclidean3";
    case MetricKind::pairwise: return "pairwise";
    case MetricKind::pairwise_root: return "pairwise-root";
    case MetricKind::componentwise: return "componentwise";
    case MetricKind::generalized: return "generalized";
    case MetricKind::product: return "product";
  }
  return "?";
}

MetricKind metric_kind_from_string(const std::string& name) {
  for (auto k : {MetricKind::vandermonde, MetricKind::root, MetricKind::euclidean3, MetricKind::pairwise,
                 MetricKind::pairwise_root, MetricKind::componentwise, MetricKind::generalized,
                 MetricKind::product}) {
    if (to_string(k) == name) return k;
  }
  throw ArgumentError("unknown metric '" + name + "'");
}

nlohmann::json to_json(const MonotoneNorm& norm) {
  nlohmann::json j;
  j["p"] = norm.is_max() ? nlohmann::json("inf") : nlohmann::json(norm.p());
  if (!norm.weights().empty()) j["weights"] = norm.weights();
  return j;
}

MonotoneNorm norm_from_json(const nlohmann::json& j) {
  const double p = number_from_json(j.at("p"));
  return MonotoneNorm(p, j.value("weights", std::vector<double>{}));
}

nlohmann::json to_json(const MetricSelector& metric) {
  nlohmann::json j{{"kind", to_string(metric.kind)}, {"norm", to_json(metric.norm)}};
  if (metric.kind == MetricKind::product) {
    j["split"] = metric.split;
    j["factors"] = nlohmann::json::array();
    for (const auto& f : metric.factors) j["factors"].push_back(to_json(f));
  }
  return j;
}

MetricSelector selector_from_json(const nlohmann::json& j) {
  MetricSelector s;
  s.kind = metric_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("norm")) s.norm = norm_from_json(j["norm"]);
  if (s.kind == MetricKind::product) {
    s.split = j.at("split").get<std::size_t>();
    for (const auto& f : j.at("factors")) s.factors.push_back(selector_from_json(f));
  }
  return s;
}

nlohmann::json to_json(const PointTuple& t) { return t.rows(); }

PointTuple tuple_from_json(const nlohmann::json& j) {
  return PointTuple(j.get<std::vector<std::vector<double>>>());
}

}  // namespace vandermetric
