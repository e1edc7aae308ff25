#pragma once

#include <span>
#include <vector>

#include "vandermetric/monotone_norm.hpp"
#include "vandermetric/point_tuple.hpp"
#include "vandermetric/report.hpp"

// Scalar and complex Vandermonde n-metrics and the constructions built on
// them.
//
// A pseudo n-metric d on X satisfies
//   (M1) d(x) = 0 whenever two entries of x coincide,
//   (M2) d is invariant under permutations of its n arguments,
//   (M3) d(x_1..x_n) <= sum_i d(x_1..y..x_n) (y in slot i) for every y.
// It is an n-metric when d(x) = 0 forces two equal entries. The Hausdorff-type
// axiom (M4) from the m-metric literature is not used anywhere here.
//
// All pairwise products are evaluated over the points sorted
// lexicographically, in (j, i) order with j < i, so a permuted argument yields
// a bit-identical result.

namespace vandermetric {

/// prod_{j<i} |z_i - z_j|. Switches to log-domain accumulation for n > 12 or
/// when a partial product leaves [1e-300, 1e300].
double vandermonde_metric(std::span<const Complex> z);

/// sum_{j<i} log|z_i - z_j|; -inf when two points coincide.
double vandermonde_metric_log(std::span<const Complex> z);

/// d_V^(2/(n(n-1))), homogeneous of degree 1.
double root_metric(std::span<const Complex> z);

/// Signed Vandermonde determinant prod_{j<i} (z_i - z_j), in input order.
Complex vandermonde_determinant(std::span<const Complex> z);

/// Solution a of sum_i a_i z_i^k = y^k (k = 0..n-1), from the determinant
/// ratio a_i = V(z_1..y..z_n) / V(z). Throws SingularityError on
/// coincident nodes.
std::vector<Complex> cramer_coefficients(std::span<const Complex> z, Complex y);

/// The same coefficients as Lagrange basis values a_k = L_k(y).
std::vector<Complex> lagrange_coefficients(std::span<const Complex> z, Complex y);

/// ||x1-x2|| ||x1-x3|| ||x2-x3|| with the Euclidean norm; a 3-metric in any
/// Euclidean space.
double euclidean_3metric(std::span<const double> x1, std::span<const double> x2,
                         std::span<const double> x3);

/// prod_{j<i} ||x_i - x_j||. For n = 4 in dimension >= 3 this violates the
/// simplex inequality (regular tetrahedron), so it is only a symmetric,
/// semidefinite function, not a pseudo n-metric.
double pairwise_product_metric(const PointTuple& t);

/// pairwise_product_metric^(2/(n(n-1))). Whether it satisfies the simplex
/// inequality in dimension >= 3 is unresolved; exposed for exploration.
double pairwise_root_metric(const PointTuple& t);

/// ||(d_V(column 1), ..., d_V(column k))|| over the coordinate columns of t.
/// A pseudo n-metric on R^k, not definite for k >= 2.
double componentwise_metric(const PointTuple& t, const MonotoneNorm& norm);

/// ||(dx, dy)|| for component values of the product pseudo n-metric.
double product_metric_value(double dx, double dy, const MonotoneNorm& norm);

/// (sum_g w_g prod_{j<i} |f_i(g) - f_j(g)|^p)^(1/p): the L^p pseudo n-metric
/// for a discrete measure with weights w over a finite grid.
double lp_function_metric(const std::vector<std::vector<double>>& samples,
                          std::span<const double> weights, double p);

/// |y|^k d_V(z) <= sum_i |z_i|^k d_V(z_1..y..z_n), 0 <= k <= n-1. At k = 0
/// this is the simplex inequality.
MetricReport extended_inequality_gap(std::span<const Complex> z, Complex y, int k,
                                     double tolerance = kInequalityTol);

}  // namespace vandermetric
