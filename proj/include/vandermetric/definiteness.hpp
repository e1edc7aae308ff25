#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vandermetric/multilinear.hpp"

// Decides, for small (n, m), whether the generalized Vandermonde pseudo
// n-metric on R^m is definite.
//
// The form vanishes iff every pair tau in T_m is killed by some difference:
// there is an assignment j: T_m -> T_n with P_tau(x_{j2} - x_{j1}) = 0. Each
// assignment forces coordinate equalities; per coordinate r these generate a
// partition of the n points. The assignment admits pairwise distinct points
// iff every pair of points lies in different classes for at least one
// coordinate. Enumerating all |T_n|^|T_m| assignments decides definiteness.

namespace vandermetric::multilinear {

enum class Verdict { definite, counterexample, exhausted };

struct DefinitenessResult {
  std::size_t n = 0;
  std::size_t m = 0;
  Verdict verdict = Verdict::exhausted;
  std::uint64_t assignments_total = 0;  // saturates at UINT64_MAX
  std::uint64_t assignments_tried = 0;
  /// For a counterexample: the assignment (pair of points killed by each
  /// tau, in tau order) and the witness points, one row per point.
  std::vector<PairIndex> assignment;
  std::vector<std::vector<long long>> witness;
};

/// Assignments are enumerated lexicographically (tau order, then pair order)
/// and the first witness wins, independent of `workers`.
DefinitenessResult definiteness_decide(std::size_t n, std::size_t m, std::uint64_t budget,
                                       unsigned workers = 1);

/// Witness points with distinct labels per equivalence class, or nullopt if
/// the assignment does not admit pairwise distinct points.
std::optional<std::vector<std::vector<long long>>> witness_for_assignment(
    std::size_t n, std::size_t m, const std::vector<PairIndex>& assignment);

/// Witness is pairwise distinct and its form is exactly zero.
bool validate_witness(std::size_t n, std::size_t m, const std::vector<std::vector<long long>>& witness);

std::string to_string(Verdict v);
nlohmann::json to_json(const DefinitenessResult& result);
/// One row per point, the layout the CSV tuple reader accepts.
std::string witness_csv(const DefinitenessResult& result);

}  // namespace vandermetric::multilinear
