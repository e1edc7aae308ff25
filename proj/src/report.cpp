#include "vandermetric/report.hpp"

#include <algorithm>
#include <cmath>

#include "vandermetric/errors.hpp"

namespace vandermetric {

double tolerance_scale(double lhs, double rhs) {
  return std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

// Both sides are homogeneous in the data, so the equality classification is
// taken relative to the larger side without the unit floor used for pass.
bool MetricReport::is_equality() const {
  return std::abs(gap) <= tolerance * std::max(std::abs(lhs), std::abs(rhs));
}

bool MetricReport::is_strict() const { return gap > 0.0 && !is_equality(); }

MetricReport make_report(std::string operation, nlohmann::json inputs, double lhs, double rhs,
                         double tolerance) {
  MetricReport r;
  r.operation = std::move(operation);
  r.inputs = std::move(inputs);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = rhs - lhs;
  r.tolerance = tolerance;
  r.pass = r.gap >= -tolerance * r.scale();
  return r;
}

nlohmann::json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
    throw ArgumentError("report: unrecognized number '" + s + "'");
  }
  if (!j.is_number()) throw ArgumentError("report: expected a number");
  return j.get<double>();
}

nlohmann::json to_json(const MetricReport& r) {
  nlohmann::json j;
  j["operation"] = r.operation;
  j["inputs"] = r.inputs;
  j["lhs"] = number_to_json(r.lhs);
  j["rhs"] = number_to_json(r.rhs);
  j["gap"] = number_to_json(r.gap);
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  if (r.seed) j["seed"] = *r.seed;
  if (r.equality) j["equality"] = *r.equality;
  if (r.equilateral) j["equilateral"] = *r.equilateral;
  return j;
}

MetricReport report_from_json(const nlohmann::json& j) {
  MetricReport r;
  r.operation = j.at("operation").get<std::string>();
  r.inputs = j.value("inputs", nlohmann::json::object());
  r.lhs = number_from_json(j.at("lhs"));
  r.rhs = number_from_json(j.at("rhs"));
  r.gap = number_from_json(j.at("gap"));
  r.tolerance = j.at("tolerance").get<double>();
  r.pass = j.at("pass").get<bool>();
  if (j.contains("seed")) r.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("equality")) r.equality = j["equality"].get<bool>();
  if (j.contains("equilateral")) r.equilateral = j["equilateral"].get<bool>();
  return r;
}

}  // namespace vandermetric
