#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vandermetric/selector.hpp"

// Seeded property campaigns. Trial i draws its inputs from an Rng seeded with
// derive_seed(seed, i), so results do not depend on the worker count, and
// every trial record carries the inputs needed to re-run it with rerun().

namespace vandermetric {

enum class CampaignOp {
  simplex,          // simplex inequality for `metric`
  extended,         // |y|^k d_V extension, every k = 0..n-1 per trial
  expansion,        // permutation expansion vs product form
  expansion_exact,  // the same in exact integer arithmetic
  sum_identity,     // V(x) = sum_i V(x with x_i -> y)
  w_identity,       // W-identity with q = 1..n per trial
  equality_family,  // (q, s) log-uniform, equality gap
  polygon,          // triangle / quadrilateral / n-gon inequalities + Ptolemy
  reduction,        // m = 2 generalized metric vs complex d_V
  homogeneity,      // d(lambda t) = |lambda|^M d(t) for d_V, root, generalized
  ode,              // contraction estimate on random linear systems
};

std::string to_string(CampaignOp op);
CampaignOp campaign_op_from_string(const std::string& name);

struct CampaignConfig {
  CampaignOp op = CampaignOp::simplex;
  MetricSelector metric;
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  std::optional<double> tolerance;  // op-specific default when empty
  std::size_t n = 3;
  std::size_t m = 2;
  /// Log-uniform range for (q, s) in the equality-family op.
  double param_lo = 0.01;
  double param_hi = 100.0;
  unsigned workers = 1;
  bool emit_all = false;  // keep every trial record, not only failures

  double effective_tolerance() const;
  nlohmann::json to_json() const;
};

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool pass = true;
  /// worst gap relative to scale; negative means a violated inequality for
  /// inequality ops, positive discrepancy for identity ops.
  double relative_gap = 0.0;
  nlohmann::json report;
};

struct CampaignResult {
  CampaignConfig config;
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// Inequality ops: the smallest relative gap seen. Identity ops: the
  /// largest relative discrepancy.
  double worst_relative_gap = 0.0;
  std::vector<TrialRecord> records;

  bool pass() const { return violations == 0; }
  nlohmann::json summary_json() const;
};

CampaignResult run_campaign(const CampaignConfig& config);

/// One trial, exactly as run_campaign evaluates it.
TrialRecord run_trial(const CampaignConfig& config, std::size_t index);

/// Recomputes a report produced by any campaign trial or check from its
/// "operation" and "inputs" fields.
nlohmann::json rerun(const nlohmann::json& report);

}  // namespace vandermetric
