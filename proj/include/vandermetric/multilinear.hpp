#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vandermetric/errors.hpp"
#include "vandermetric/monotone_norm.hpp"
#include "vandermetric/point_tuple.hpp"
#include "vandermetric/report.hpp"

// Symmetric multilinear machinery on R^m.
//
// The map A: (R^m)^k -> R^(2 M_m) has one planar component per coordinate pair
// tau = (tau1, tau2), tau1 < tau2: the complex product of the projections
// (x[tau1] + i x[tau2]) of all k arguments. Feeding it the M_n pairwise
// differences x_i - x_j (j < i) of an n-tuple gives the generalized
// Vandermonde form V(x), and any norm of V(x) is a pseudo n-metric.
//
// Everything is templated on the scalar so identities can be re-run in exact
// integer arithmetic (ExactInt) alongside double precision.

namespace vandermetric::multilinear {

using ExactInt = __int128;

constexpr std::size_t pair_count(std::size_t m) { return m * (m - 1) / 2; }

/// An ordered coordinate pair, 0-based, first < second.
struct PairIndex {
  std::size_t first;
  std::size_t second;
  friend bool operator==(const PairIndex&, const PairIndex&) = default;
  friend auto operator<=>(const PairIndex&, const PairIndex&) = default;
};

/// All pairs of {0..m-1} in lexicographic order; exactly pair_count(m) of them.
std::vector<PairIndex> enumerate_pairs(std::size_t m);

/// Parameters of the complex-product-projection map.
struct MultilinearMapSpec {
  std::size_t n = 2;      // tuple size
  std::size_t m = 2;      // ambient dimension
  std::size_t extra = 0;  // additional arguments, q - 1 for the W-form

  std::size_t pair_arity() const { return pair_count(n); }
  std::size_t arity() const { return pair_count(n) + extra; }
  std::size_t output_dimension() const { return 2 * pair_count(m); }
  void validate() const;
};

/// A permutation of {0..n-1} with its sign. In the expansion identity the
/// point x_j enters with multiplicity perm[j], so multiplicities sum to M_n.
struct PermutationTerm {
  std::vector<std::size_t> perm;
  int sign;
};

/// All n! permutations in lexicographic order with their parity.
std::vector<PermutationTerm> enumerate_permutations(std::size_t n);

/// Largest n accepted by expansion-based operations.
inline constexpr std::size_t kMaxExpansionN = 8;

template <class T>
struct Planar {
  T re{};
  T im{};
  friend Planar operator*(const Planar& a, const Planar& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

namespace detail {

template <class T>
bool lexicographic_less(std::span<const T> a, std::span<const T> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

template <class T>
void check_points(const MultilinearMapSpec& spec, std::span<const T> coords) {
  spec.validate();
  if (coords.size() != spec.n * spec.m) {
    throw ArgumentError("multilinear: expected " + std::to_string(spec.n) + " points of dimension " +
                        std::to_string(spec.m));
  }
}

template <class T>
std::span<const T> point(std::span<const T> coords, std::size_t m, std::size_t i) {
  return coords.subspan(i * m, m);
}

}  // namespace detail

/// A(args): per pair tau, the complex product of the projections of all
/// arguments, laid out as (re, im) per tau in lexicographic tau order.
/// Arguments are multiplied in lexicographic order of their contents, so the
/// result is bit-identical for any ordering of the same multiset.
template <class T>
std::vector<T> apply(const MultilinearMapSpec& spec, std::vector<std::span<const T>> args) {
  spec.validate();
  if (args.size() != spec.arity()) {
    throw ArgumentError("multilinear: map expects " + std::to_string(spec.arity()) +
                        " arguments, got " + std::to_string(args.size()));
  }
  for (const auto& a : args) {
    if (a.size() != spec.m) throw ArgumentError("multilinear: argument dimension mismatch");
  }
  std::sort(args.begin(), args.end(), detail::lexicographic_less<T>);

  std::vector<T> out;
  out.reserve(spec.output_dimension());
  for (std::size_t a = 0; a < spec.m; ++a) {
    for (std::size_t b = a + 1; b < spec.m; ++b) {
      Planar<T> acc{args[0][a], args[0][b]};
      for (std::size_t k = 1; k < args.size(); ++k) acc = acc * Planar<T>{args[k][a], args[k][b]};
      out.push_back(acc.re);
      out.push_back(acc.im);
    }
  }
  return out;
}

/// The pairwise differences x_i - x_j, 0 <= j < i < n, in (j, i) order,
/// flattened (each of dimension m).
template <class T>
std::vector<T> pairwise_differences(const MultilinearMapSpec& spec, std::span<const T> coords) {
  detail::check_points(spec, coords);
  std::vector<T> diffs;
  diffs.reserve(spec.pair_arity() * spec.m);
  for (std::size_t j = 0; j < spec.n; ++j) {
    for (std::size_t i = j + 1; i < spec.n; ++i) {
      auto xi = detail::point(coords, spec.m, i);
      auto xj = detail::point(coords, spec.m, j);
      for (std::size_t r = 0; r < spec.m; ++r) diffs.push_back(xi[r] - xj[r]);
    }
  }
  return diffs;
}

/// A(prod_{j<i} (x_i - x_j), extra...). `extra` holds spec.extra points.
template <class T>
std::vector<T> product_difference_form(const MultilinearMapSpec& spec, std::span<const T> coords,
                                       std::span<const T> extra = {}) {
  const auto diffs = pairwise_differences(spec, coords);
  if (extra.size() != spec.extra * spec.m) throw ArgumentError("multilinear: extra argument count mismatch");
  std::vector<std::span<const T>> args;
  args.reserve(spec.arity());
  const std::span<const T> dv(diffs);
  for (std::size_t k = 0; k < spec.pair_arity(); ++k) args.push_back(dv.subspan(k * spec.m, spec.m));
  for (std::size_t k = 0; k < spec.extra; ++k) args.push_back(extra.subspan(k * spec.m, spec.m));
  return apply<T>(spec, std::move(args));
}

/// sum_pi sign(pi) A(prod_j x_j^perm[j], extra...). Equal to
/// product_difference_form; guarded to n <= kMaxExpansionN.
template <class T>
std::vector<T> permutation_expansion(const MultilinearMapSpec& spec, std::span<const T> coords,
                                     std::span<const T> extra = {}) {
  detail::check_points(spec, coords);
  if (spec.n > kMaxExpansionN) {
    throw ResourceError("multilinear: permutation expansion limited to n <= " +
                        std::to_string(kMaxExpansionN));
  }
  if (extra.size() != spec.extra * spec.m) throw ArgumentError("multilinear: extra argument count mismatch");
  std::vector<T> sum(spec.output_dimension(), T{});
  std::vector<std::span<const T>> args;
  for (const auto& term : enumerate_permutations(spec.n)) {
    args.clear();
    for (std::size_t j = 0; j < spec.n; ++j) {
      for (std::size_t r = 0; r < term.perm[j]; ++r) args.push_back(detail::point(coords, spec.m, j));
    }
    for (std::size_t k = 0; k < spec.extra; ++k) args.push_back(extra.subspan(k * spec.m, spec.m));
    const auto value = apply<T>(spec, args);
    for (std::size_t c = 0; c < sum.size(); ++c) {
      if (term.sign > 0) {
        sum[c] += value[c];
      } else {
        sum[c] -= value[c];
      }
    }
  }
  return sum;
}

/// Componentwise V(x) - sum_i V(x with x_i -> y). Identically zero.
template <class T>
std::vector<T> sum_identity_residual(const MultilinearMapSpec& spec, std::span<const T> coords,
                                     std::span<const T> y) {
  detail::check_points(spec, coords);
  if (y.size() != spec.m) throw ArgumentError("multilinear: y dimension mismatch");
  auto residual = product_difference_form<T>(spec, coords);
  std::vector<T> replaced(coords.begin(), coords.end());
  for (std::size_t i = 0; i < spec.n; ++i) {
    std::copy(y.begin(), y.end(), replaced.begin() + static_cast<std::ptrdiff_t>(i * spec.m));
    const auto term = product_difference_form<T>(spec, std::span<const T>(replaced));
    for (std::size_t c = 0; c < residual.size(); ++c) residual[c] -= term[c];
    std::copy_n(coords.begin() + static_cast<std::ptrdiff_t>(i * spec.m), spec.m,
                replaced.begin() + static_cast<std::ptrdiff_t>(i * spec.m));
  }
  return residual;
}

/// W(x, y) = B(prod (x_i - x_j), y^(q-1)) with B the map of arity M_n + q - 1.
template <class T>
std::vector<T> w_form(const MultilinearMapSpec& spec, std::span<const T> coords, std::span<const T> last) {
  if (last.size() != spec.m) throw ArgumentError("multilinear: W-form last argument dimension mismatch");
  std::vector<T> extra;
  extra.reserve(spec.extra * spec.m);
  for (std::size_t k = 0; k < spec.extra; ++k) extra.insert(extra.end(), last.begin(), last.end());
  return product_difference_form<T>(spec, coords, std::span<const T>(extra));
}

/// The n terms W(x_1..y..x_n, x_i) (y in slot i) of the W-identity.
template <class T>
std::vector<std::vector<T>> w_identity_terms(const MultilinearMapSpec& spec, std::span<const T> coords,
                                             std::span<const T> y) {
  detail::check_points(spec, coords);
  if (y.size() != spec.m) throw ArgumentError("multilinear: y dimension mismatch");
  std::vector<std::vector<T>> terms;
  std::vector<T> replaced(coords.begin(), coords.end());
  for (std::size_t i = 0; i < spec.n; ++i) {
    const auto xi = detail::point(coords, spec.m, i);
    std::copy(y.begin(), y.end(), replaced.begin() + static_cast<std::ptrdiff_t>(i * spec.m));
    terms.push_back(w_form<T>(spec, std::span<const T>(replaced), xi));
    std::copy(xi.begin(), xi.end(), replaced.begin() + static_cast<std::ptrdiff_t>(i * spec.m));
  }
  return terms;
}

/// Componentwise W(x, y) - sum_i W(x_1..y..x_n, x_i). Identically zero.
template <class T>
std::vector<T> w_identity_residual(const MultilinearMapSpec& spec, std::span<const T> coords,
                                   std::span<const T> y) {
  auto residual = w_form<T>(spec, coords, y);
  for (const auto& term : w_identity_terms<T>(spec, coords, y)) {
    for (std::size_t c = 0; c < residual.size(); ++c) residual[c] -= term[c];
  }
  return residual;
}

// --- double-precision entry points ---------------------------------------

/// Max-norm discrepancy of an identity together with the scale it is
/// measured against: max(|lhs|_inf, max_i |term_i|_inf, 1).
struct IdentityGap {
  double gap = 0.0;
  double scale = 1.0;
  bool within(double tolerance) const { return gap <= tolerance * scale; }
};

MultilinearMapSpec spec_for(const PointTuple& t, std::size_t extra = 0);

std::vector<double> complex_product_map(const MultilinearMapSpec& spec,
                                        const std::vector<std::vector<double>>& args);
std::vector<double> product_difference_form(const MultilinearMapSpec& spec, const PointTuple& t);
std::vector<double> permutation_expansion(const MultilinearMapSpec& spec, const PointTuple& t);

/// Max-norm gap between permutation_expansion and product_difference_form.
IdentityGap expansion_gap(const MultilinearMapSpec& spec, const PointTuple& t);
IdentityGap sum_identity_gap(const MultilinearMapSpec& spec, const PointTuple& t, std::span<const double> y);

struct WIdentityResult {
  IdentityGap identity;
  /// ||W(x, y)|| <= sum_i ||W(x_1..y..x_n, x_i)|| under the given norm.
  MetricReport norm_inequality;
};

/// Requires 1 <= q <= n and spec.extra == q - 1.
WIdentityResult w_identity_gap(const MultilinearMapSpec& spec, const PointTuple& t, std::span<const double> y,
                               std::size_t q, const MonotoneNorm& norm = MonotoneNorm::euclidean(),
                               double tolerance = kInequalityTol);

/// ||product_difference_form(spec, t)||, a pseudo n-metric on R^m.
double generalized_metric(const MultilinearMapSpec& spec, const PointTuple& t, const MonotoneNorm& norm);

/// Four pairwise distinct points in R^4 whose generalized 4-metric vanishes.
PointTuple counterexample_4_4();

/// True when for every coordinate pair tau some difference x_i - x_j has both
/// coordinates tau1, tau2 equal to zero. Each tau component of the
/// generalized form then has a zero factor, so the form vanishes exactly.
bool every_projection_killed(const PointTuple& t);

}  // namespace vandermetric::multilinear
