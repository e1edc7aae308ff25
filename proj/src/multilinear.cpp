#include "vandermetric/multilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vandermetric::multilinear {

std::vector<PairIndex> enumerate_pairs(std::size_t m) {
  std::vector<PairIndex> pairs;
  pairs.reserve(pair_count(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) pairs.push_back({a, b});
  }
  return pairs;
}

void MultilinearMapSpec::validate() const {
  if (n < 2) throw ArgumentError("multilinear: n must be >= 2");
  if (m < 2) throw ArgumentError("multilinear: m must be >= 2");
}

std::vector<PermutationTerm> enumerate_permutations(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<PermutationTerm> terms;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    }
    terms.push_back({perm, inversions % 2 == 0 ? 1 : -1});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return terms;
}

MultilinearMapSpec spec_for(const PointTuple& t, std::size_t extra) {
  MultilinearMapSpec spec{t.size(), t.dimension(), extra};
  spec.validate();
  return spec;
}

namespace {

void check_tuple(const MultilinearMapSpec& spec, const PointTuple& t) {
  if (t.size() != spec.n || t.dimension() != spec.m) {
    throw ArgumentError("multilinear: tuple shape (" + std::to_string(t.size()) + ", " +
                        std::to_string(t.dimension()) + ") does not match spec (" + std::to_string(spec.n) + ", " +
                        std::to_string(spec.m) + ")");
  }
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

std::vector<double> complex_product_map(const MultilinearMapSpec& spec, const std::vector<std::vector<double>>& args) {
  std::vector<std::span<const double>> views(args.begin(), args.end());
  return apply<double>(spec, std::move(views));
}

std::vector<double> product_difference_form(const MultilinearMapSpec& spec, const PointTuple& t) {
  check_tuple(spec, t);
  if (spec.extra != 0) throw ArgumentError("multilinear: product_difference_form takes no extra arguments");
  return product_difference_form<double>(spec, t.coordinates());
}

std::vector<double> permutation_expansion(const MultilinearMapSpec& spec, const PointTuple& t) {
  check_tuple(spec, t);
  if (spec.extra != 0) throw ArgumentError("multilinear: permutation_expansion takes no extra arguments");
  return permutation_expansion<double>(spec, t.coordinates());
}

IdentityGap expansion_gap(const MultilinearMapSpec& spec, const PointTuple& t) {
  const auto product = product_difference_form(spec, t);
  const auto expansion = permutation_expansion(spec, t);
  return {max_abs_diff(product, expansion), std::max({max_abs(product), max_abs(expansion), 1.0})};
}

IdentityGap sum_identity_gap(const MultilinearMapSpec& spec, const PointTuple& t, std::span<const double> y) {
  check_tuple(spec, t);
  if (spec.extra != 0) throw ArgumentError("multilinear: sum identity takes no extra arguments");
  if (y.size() != spec.m) throw ArgumentError("multilinear: y dimension mismatch");
  const auto lhs = product_difference_form<double>(spec, t.coordinates());
  std::vector<double> sum(lhs.size(), 0.0);
  double scale = std::max(max_abs(lhs), 1.0);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const auto term = product_difference_form<double>(spec, t.replaced(i, y).coordinates());
    scale = std::max(scale, max_abs(term));
    for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += term[c];
  }
  return {max_abs_diff(lhs, sum), scale};
}

WIdentityResult w_identity_gap(const MultilinearMapSpec& spec, const PointTuple& t, std::span<const double> y,
                               std::size_t q, const MonotoneNorm& norm, double tolerance) {
  check_tuple(spec, t);
  if (q < 1 || q > spec.n) {
    throw ArgumentError("w identity: q must lie in [1, " + std::to_string(spec.n) + "], got " + std::to_string(q));
  }
  if (spec.extra != q - 1) throw ArgumentError("w identity: spec.extra must equal q - 1");
  if (y.size() != spec.m) throw ArgumentError("multilinear: y dimension mismatch");

  const auto lhs = w_form<double>(spec, t.coordinates(), y);
  const auto terms = w_identity_terms<double>(spec, t.coordinates(), y);
  std::vector<double> sum(lhs.size(), 0.0);
  double scale = std::max(max_abs(lhs), 1.0);
  double norm_sum = 0.0;
  for (const auto& term : terms) {
    scale = std::max(scale, max_abs(term));
    norm_sum += norm(term);
    for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += term[c];
  }
  nlohmann::json inputs{{"tuple", t.rows()}, {"y", std::vector<double>(y.begin(), y.end())}, {"q", q}};
  return {{max_abs_diff(lhs, sum), scale}, make_report("w-norm-inequality", std::move(inputs), norm(lhs), norm_sum, tolerance)};
}

double generalized_metric(const MultilinearMapSpec& spec, const PointTuple& t, const MonotoneNorm& norm) {
  return norm(product_difference_form(spec, t));
}

PointTuple counterexample_4_4() {
  // Columns of the displayed 4x4 matrix, one point per row here.
  return PointTuple{{0, 0, 0, 0}, {0, 0, 0, -1}, {0, 1, 1, 0}, {1, 0, 1, 0}};
}

bool every_projection_killed(const PointTuple& t) {
  for (const auto& tau : enumerate_pairs(t.dimension())) {
    bool killed = false;
    for (std::size_t j = 0; j < t.size() && !killed; ++j) {
      for (std::size_t i = j + 1; i < t.size() && !killed; ++i) {
        killed = t.point(i)[tau.first] == t.point(j)[tau.first] && t.point(i)[tau.second] == t.point(j)[tau.second];
      }
    }
    if (!killed) return false;
  }
  return true;
}

}  // namespace vandermetric::multilinear
