#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vandermetric/core_metric.hpp"
#include "vandermetric/errors.hpp"
#include "vandermetric/selector.hpp"

using namespace vandermetric;
using C = std::complex<double>;

namespace {

std::vector<C> roots_of_unity(std::size_t n) {
  std::vector<C> z;
  for (std::size_t k = 0; k < n; ++k) z.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / n));
  return z;
}

}  // namespace

TEST_CASE("vandermonde metric on small tuples") {
  CHECK(vandermonde_metric(std::vector<C>{0.0, 1.0, 2.0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(vandermonde_metric(std::vector<C>{{0.3, 1}, {0.3, 1}, {2, -1}}) == 0.0);
  const std::vector<C> square{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  CHECK(vandermonde_metric(square) == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("vandermonde metric rejects bad input") {
  CHECK_THROWS_AS(vandermonde_metric(std::vector<C>{1.0}), ArgumentError);
  CHECK_THROWS_AS(vandermonde_metric(std::vector<C>{1.0, {NAN, 0}}), ArgumentError);
  CHECK_THROWS_AS(vandermonde_metric(std::vector<C>{1.0, {INFINITY, 0}}), ArgumentError);
}

TEST_CASE("vandermonde metric agrees with the naive long double product") {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const auto z = oracle::random_complex(g, n, 3.0);
    const double ref = static_cast<double>(oracle::vandermonde_naive(z));
    CHECK(vandermonde_metric(z) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("permuted inputs give bit-identical values") {
  std::mt19937_64 g(12);
  for (int trial = 0; trial < 200; ++trial) {
    auto z = oracle::random_complex(g, 6);
    const double a = vandermonde_metric(z);
    const double r = root_metric(z);
    std::shuffle(z.begin(), z.end(), g);
    CHECK(vandermonde_metric(z) == a);
    CHECK(root_metric(z) == r);
  }
}

TEST_CASE("log domain") {
  CHECK(vandermonde_metric_log(std::vector<C>{0.0, 1.0, 2.0}) == doctest::Approx(std::log(2.0)));
  CHECK(vandermonde_metric_log(std::vector<C>{{1, 1}, {1, 1}}) == -INFINITY);

  const auto z = roots_of_unity(40);
  long double logs = 0.0L;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) logs += std::log(std::abs(oracle::cld(z[i]) - oracle::cld(z[j])));
  }
  CHECK(vandermonde_metric_log(z) == doctest::Approx(static_cast<double>(logs)).epsilon(1e-12));
  // |prod (z_i - z_j)|^2 over the n-th roots of unity is n^n
  CHECK(vandermonde_metric_log(z) == doctest::Approx(20.0 * std::log(40.0)).epsilon(1e-12));
  // 40 points take the overflow-safe path; the value is finite
  CHECK(std::isfinite(vandermonde_metric(z)));
  CHECK(std::log(vandermonde_metric(z)) == doctest::Approx(20.0 * std::log(40.0)).epsilon(1e-12));
}

TEST_CASE("large spread tuples stay finite through log accumulation") {
  // partial products underflow (1e-150 spacing) and the cross terms are
  // huge, but the full product is about 1.6e-99
  const std::vector<C> z{0.0, 1e-150, 2e-150, 1e50, 2e50};
  long double logs = 0.0L;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) logs += std::log(std::abs(oracle::cld(z[i]) - oracle::cld(z[j])));
  }
  const double lg = vandermonde_metric_log(z);
  CHECK(lg == doctest::Approx(static_cast<double>(logs)).epsilon(1e-14));
  const double v = vandermonde_metric(z);
  CHECK(v > 0.0);
  CHECK(std::log(v) == doctest::Approx(lg).epsilon(1e-13));
}

TEST_CASE("root metric") {
  CHECK(root_metric(std::vector<C>{0.0, 1.0, 2.0}) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-15));
  CHECK(root_metric(std::vector<C>{0.0, 2.0, 4.0}) == doctest::Approx(2.0 * std::cbrt(2.0)).epsilon(1e-15));
  CHECK(root_metric(std::vector<C>{{2, 2}, {2, 2}, {0, 1}}) == 0.0);
}

TEST_CASE("signed determinant matches LU") {
  std::mt19937_64 g(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto z = oracle::random_complex(g, 2 + trial % 6);
    const C ref = oracle::vandermonde_det_lu(z);
    CHECK(std::abs(vandermonde_determinant(z) - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("cramer coefficients") {
  auto close = [](const std::vector<C>& a, const std::vector<C>& b, double tol) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
  };
  const auto r3 = roots_of_unity(3);
  CHECK(close(cramer_coefficients(r3, 0.0), {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-14));
  CHECK(close(cramer_coefficients(std::vector<C>{0.0, 1.0}, 0.0), {1.0, 0.0}, 0.0));
  CHECK(close(cramer_coefficients(std::vector<C>{0.0, 1.0, 2.0}, 3.0), {1.0, -3.0, 3.0}, 1e-14));
  CHECK(close(lagrange_coefficients(std::vector<C>{0.0, 1.0, 2.0}, 3.0), {1.0, -3.0, 3.0}, 1e-14));

  CHECK_THROWS_AS(cramer_coefficients(std::vector<C>{1.0, 1.0, 2.0}, 0.5), SingularityError);
  CHECK_THROWS_AS(lagrange_coefficients(std::vector<C>{1.0, 2.0, 1.0}, 0.5), SingularityError);

  std::mt19937_64 g(14);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const auto z = oracle::random_complex(g, n);
    const C y = oracle::random_complex(g, 1, 1.5)[0];
    const auto a = cramer_coefficients(z, y);
    const auto b = lagrange_coefficients(z, y);
    const auto ref = oracle::interpolation_weights(z, y);
    double mag = 1.0;
    for (const auto& v : ref) mag = std::max(mag, std::abs(v));
    CHECK(close(a, b, 1e-10 * mag));
    CHECK(close(a, ref, 1e-7 * mag));
    C s = 0.0;
    for (const auto& v : a) s += v;
    CHECK(std::abs(s - 1.0) <= 1e-10 * mag);
  }
}

TEST_CASE("simplex gap examples") {
  const auto sq = PointTuple::from_complex(roots_of_unity(4));
  const std::vector<double> origin{0.0, 0.0};
  const auto r = simplex_gap(sq, origin, MetricSelector::of(MetricKind::vandermonde));
  CHECK(r.lhs == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(r.rhs == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(std::abs(r.gap) <= 1e-12 * r.scale());
  CHECK(r.pass);
  CHECK(r.is_equality());

  const PointTuple repeated{{0.5, 0.5}, {0.5, 0.5}, {1.0, -1.0}};
  const auto rr = simplex_gap(repeated, std::vector<double>{3.0, 3.0}, MetricSelector::of(MetricKind::vandermonde));
  CHECK(rr.lhs == 0.0);
  CHECK(rr.pass);

  CHECK_THROWS_AS(simplex_gap(sq, std::vector<double>{1.0}, MetricSelector::of(MetricKind::vandermonde)), ArgumentError);
}

TEST_CASE("simplex inequality against a test-side evaluation") {
  std::mt19937_64 g(15);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 3 + trial % 4;
    const auto z = oracle::random_complex(g, n, 2.0);
    const C y = oracle::random_complex(g, 1, 3.0)[0];
    long double rhs = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      auto w = z;
      w[i] = y;
      rhs += oracle::vandermonde_naive(w);
    }
    const long double lhs = oracle::vandermonde_naive(z);
    REQUIRE(lhs <= rhs * (1 + 1e-12L));
    const auto r = simplex_gap(PointTuple::from_complex(z), std::vector<double>{y.real(), y.imag()},
                               MetricSelector::of(MetricKind::vandermonde));
    CHECK(r.pass);
    CHECK(r.rhs == doctest::Approx(static_cast<double>(rhs)).epsilon(1e-12));
  }
}

TEST_CASE("extended inequality") {
  const std::vector<C> tri = {{1, 0}, std::polar(1.0, 2 * std::numbers::pi / 3), std::polar(1.0, 4 * std::numbers::pi / 3)};
  const auto k1 = extended_inequality_gap(tri, 0.0, 1);
  CHECK(k1.lhs == 0.0);
  CHECK(k1.pass);

  const auto k2 = extended_inequality_gap(std::vector<C>{1.0, 2.0, 3.0}, 5.0, 2);
  // lhs = 25 * 2; rhs = 1*|5-2||5-3||2-3| + 4*|1-5||1-3||5-3| + 9*|1-2||1-5||2-5|
  CHECK(k2.lhs == doctest::Approx(50.0));
  CHECK(k2.rhs == doctest::Approx(6.0 + 64.0 + 108.0));
  CHECK(k2.pass);
  CHECK(k2.gap > 0.0);

  std::mt19937_64 g(16);
  const auto z = oracle::random_complex(g, 4);
  const C y(0.3, -0.7);
  const auto k0 = extended_inequality_gap(z, y, 0);
  const auto s = simplex_gap(PointTuple::from_complex(z), std::vector<double>{y.real(), y.imag()},
                             MetricSelector::of(MetricKind::vandermonde));
  CHECK(k0.lhs == s.lhs);
  CHECK(k0.rhs == s.rhs);
  CHECK(k0.pass == s.pass);

  CHECK_THROWS_AS(extended_inequality_gap(z, y, 4), ArgumentError);
  CHECK_THROWS_AS(extended_inequality_gap(z, y, -1), ArgumentError);
}

TEST_CASE("euclidean 3-metric") {
  const std::vector<double> o{0, 0, 0}, e1{1, 0, 0}, e2{0, 1, 0};
  CHECK(euclidean_3metric(o, o, e1) == 0.0);
  CHECK(euclidean_3metric(o, e1, e2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(euclidean_3metric(o, e1, std::vector<double>{1, 2}), ArgumentError);

  std::mt19937_64 g(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = oracle::random_points(g, 3, 2 + trial % 4);
    const double ref = static_cast<double>(oracle::dist(x[0], x[1]) * oracle::dist(x[0], x[2]) * oracle::dist(x[1], x[2]));
    CHECK(euclidean_3metric(x[0], x[1], x[2]) == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("product metric combinator") {
  const PointTuple line{{0.0}, {1.0}, {2.0}};
  const auto dv = MetricSelector::of(MetricKind::vandermonde);
  CHECK(product_metric(dv, dv, MonotoneNorm::euclidean(), line, line) == doctest::Approx(std::sqrt(8.0)));
  CHECK(product_metric(dv, dv, MonotoneNorm(1.0), line, line) == doctest::Approx(4.0));
  const PointTuple flat{{1.0}, {1.0}, {2.0}};
  CHECK(product_metric(dv, dv, MonotoneNorm::euclidean(), flat, flat) == 0.0);
  const PointTuple pair{{0.0}, {1.0}};
  CHECK_THROWS_AS(product_metric(dv, dv, MonotoneNorm::euclidean(), line, pair), ArgumentError);
  CHECK(product_metric_value(3.0, 4.0, MonotoneNorm::euclidean()) == doctest::Approx(5.0));

  // the split selector form evaluates the same thing on concatenated coordinates
  const PointTuple both{{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}};
  const auto sel = MetricSelector::product(dv, dv, 1, MonotoneNorm::euclidean());
  CHECK(evaluate(sel, both) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("componentwise metric") {
  const PointTuple t{{0, 0}, {1, 0}, {2, 1}};
  CHECK(componentwise_metric(t, MonotoneNorm(1.0)) == doctest::Approx(2.0));
  const PointTuple same{{1, 2}, {1, 2}, {1, 2}};
  CHECK(componentwise_metric(same, MonotoneNorm::euclidean()) == 0.0);
  const PointTuple witness{{0, 0}, {0, 1}, {1, 1}};
  CHECK(componentwise_metric(witness, MonotoneNorm::euclidean()) == 0.0);
}

TEST_CASE("L^p function metric") {
  const std::vector<double> w1{1.0};
  CHECK(lp_function_metric({{0.0}, {1.0}, {0.0}}, w1, 1.0) == 0.0);
  CHECK(lp_function_metric({{0.0}, {1.0}, {2.0}}, w1, 1.0) == doctest::Approx(2.0));
  const double t = 3.5;
  const std::vector<double> w2{1.0, 1.0};
  const double dv = 1.0 * t * (t - 1.0);
  CHECK(lp_function_metric({{0.0, 0.0}, {1.0, 1.0}, {t, t}}, w2, 2.0) == doctest::Approx(std::sqrt(2.0) * dv));
  CHECK_THROWS_AS(lp_function_metric({{0.0, 1.0}, {1.0}}, w2, 2.0), ArgumentError);
  CHECK_THROWS_AS(lp_function_metric({{0.0}, {1.0}}, w1, 0.5), ArgumentError);
}

TEST_CASE("pairwise product metric fails on the regular tetrahedron") {
  const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);
  const PointTuple tet{{1, 0, 0}, {-1.0 / 3, 2 * r2 / 3, 0}, {-1.0 / 3, -r2 / 3, r6 / 3}, {-1.0 / 3, -r2 / 3, -r6 / 3}};
  const auto r = simplex_gap(tet, std::vector<double>{0, 0, 0}, MetricSelector::of(MetricKind::pairwise));
  CHECK_FALSE(r.pass);
  CHECK(r.lhs == doctest::Approx(512.0 / 27.0).epsilon(1e-13));
  CHECK(r.rhs == doctest::Approx(4.0 * std::pow(8.0 / 3.0, 1.5)).epsilon(1e-13));
}

TEST_CASE("metric kind names round-trip") {
  for (auto k : {MetricKind::vandermonde, MetricKind::root, MetricKind::euclidean3, MetricKind::pairwise,
                 MetricKind::pairwise_root, MetricKind::componentwise, MetricKind::generalized, MetricKind::product}) {
    CHECK(metric_kind_from_string(to_string(k)) == k);
  }
  CHECK(to_string(MetricKind::pairwise_root) == "pairwise-root");
  CHECK_THROWS_AS(metric_kind_from_string("nope"), ArgumentError);
}
