#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace vandermetric {

/// Default relative tolerance for inequality checks.
inline constexpr double kInequalityTol = 1e-9;

/// max(|lhs|, |rhs|, 1), the scale all relative tolerances refer to.
double tolerance_scale(double lhs, double rhs);

/// Outcome of one inequality or identity check, lhs <= rhs.
struct MetricReport {
  std::string operation;
  nlohmann::json inputs = nlohmann::json::object();
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // rhs - lhs
  double tolerance = kInequalityTol;
  bool pass = false;
  std::optional<std::uint64_t> seed;
  /// Set by checks that also characterize equality cases.
  std::optional<bool> equality;
  std::optional<bool> equilateral;

  double scale() const { return tolerance_scale(lhs, rhs); }
  /// |gap| <= tolerance * max(|lhs|, |rhs|); no unit floor, so tiny but
  /// clearly unequal sides are not classified as equal.
  bool is_equality() const;
  /// gap > 0 and not an equality.
  bool is_strict() const;
};

/// Fills gap, tolerance and pass from lhs/rhs.
MetricReport make_report(std::string operation, nlohmann::json inputs,
                         double lhs, double rhs, double tolerance = kInequalityTol);

nlohmann::json to_json(const MetricReport& report);
MetricReport report_from_json(const nlohmann::json& j);

/// Non-finite doubles become the strings "inf", "-inf", "nan"; JSON has no
/// literal for them.
nlohmann::json number_to_json(double x);
double number_from_json(const nlohmann::json& j);

}  // namespace vandermetric
