#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "vandermetric/point_tuple.hpp"
#include "vandermetric/report.hpp"

namespace vandermetric::geometry {

/// n >= 3 distinct points on a circle, ordered by strictly increasing angle.
class CyclicPolygon {
 public:
  CyclicPolygon(double radius, std::vector<double> angles, Complex center = {});

  /// Vertices center + R e^(i (rotation + 2 pi k / n)).
  static CyclicPolygon regular(std::size_t n, double radius = 1.0, double rotation = 0.0,
                               Complex center = {});

  double radius() const noexcept { return radius_; }
  const std::vector<double>& angles() const noexcept { return angles_; }
  Complex center() const noexcept { return center_; }
  std::size_t size() const noexcept { return angles_.size(); }

  std::vector<Complex> vertices() const;

 private:
  double radius_;
  std::vector<double> angles_;
  Complex center_;
};

/// Polygon spec {"R": ..., "angles": [...], "center": [re, im]}.
nlohmann::json to_json(const CyclicPolygon& poly);
CyclicPolygon polygon_from_json(const nlohmann::json& j);

/// All sides within `relative_tol` * R of each other.
bool has_equal_sides(const CyclicPolygon& poly, double relative_tol = 1e-9);

/// All consecutive angle gaps (including the wrap-around) within
/// `relative_tol` of 2 pi / n.
bool is_equilateral(const CyclicPolygon& poly, double relative_tol = 1e-9);

/// Normalized quadruple y = 0, z1 = 1, z2 = (-1 + i sqrt(q(1+s)))/s,
/// z3 = (-1 - i sqrt((1+s)/q))/s for which the 3-point simplex inequality is
/// an equality.
struct EqualityFamilyPoint {
  double q;
  double s;
  Complex y;
  Complex z1;
  Complex z2;
  Complex z3;
};

EqualityFamilyPoint equality_family(double q, double s);

/// lhs = d_V(z1,z2,z3), rhs = d_V(y,z2,z3) + d_V(z1,y,z3) + d_V(z1,z2,y).
/// Sets the equality flag.
MetricReport equality_gap_3(Complex y, Complex z1, Complex z2, Complex z3,
                            double tolerance = kInequalityTol);

/// Result of matching a quadruple against the equality family after
/// normalization (shift y to 0, scale the first z to 1), over all 6
/// orderings of (z1, z2, z3).
struct FamilyMatch {
  bool matched = false;
  double q = 0.0;
  double s = 0.0;
  std::array<int, 3> order{0, 1, 2};
  double residual = 0.0;  // smallest |z3 - z3(q, s)| over the orderings tried
};

FamilyMatch match_equality_family(Complex y, Complex z1, Complex z2, Complex z3,
                                  double tolerance = 1e-6);

/// abc <= R^2 (a + b + c). Equality flag and equilateral flag are both set.
MetricReport triangle_check(const CyclicPolygon& poly, double tolerance = kInequalityTol);

/// abcdef <= R^3 (abe + bcf + cde + adf) with sides in vertex order,
/// e = |z1 - z3|, f = |z2 - z4|.
MetricReport quadrilateral_check(const CyclicPolygon& poly, double tolerance = kInequalityTol);

/// |ef - (ac + bd)| / max(ef, ac + bd) for a quadrilateral.
double ptolemy_defect(const CyclicPolygon& poly);

/// prod |z_i - z_j| <= R^((n+1)(n-2)/2) (n-2)! sum |z_i - z_j|. Beyond n = 20
/// both sides are computed in log domain and reported as logarithms
/// (the report's inputs carry "log_domain": true).
MetricReport ngon_check(const CyclicPolygon& poly, double tolerance = kInequalityTol);

/// Simplex inequality for d_V with y the circumcenter. Equality holds iff
/// the polygon is equilateral; both flags are reported.
MetricReport simplex_equality_ngon(const CyclicPolygon& poly, double tolerance = kInequalityTol);

/// The constant R^e k! of the n-gon inequality, as (e, k).
struct NgonConstant {
  std::uint64_t radius_exponent;
  std::uint64_t factorial_argument;
  friend bool operator==(const NgonConstant&, const NgonConstant&) = default;
};

NgonConstant ngon_constant(std::size_t n);

/// The same constant assembled from the induction step: the factor
/// (n-2) (n-3)! R^(n-1) R^(n(n-3)/2), returned as (exponent, (n-2) * (n-3)!).
struct InductiveConstant {
  std::uint64_t radius_exponent;
  std::uint64_t coefficient;
};
InductiveConstant ngon_constant_inductive(std::size_t n);

std::uint64_t factorial(std::size_t k);

/// The regular tetrahedron on the unit sphere and the failed simplex
/// inequality of the full pairwise product with y = 0.
struct TetrahedronReport {
  std::array<std::array<double, 3>, 4> points;
  std::array<double, 4> norms;
  std::array<double, 6> distances;  // (j, i) order
  bool exact_geometry = false;      // |x_j|^2 = 1 and |x_i - x_j|^2 = 8/3 exactly
  std::int64_t squared_distance_num = 0;
  std::int64_t squared_distance_den = 1;
  /// lhs^2 / rhs^2 in lowest terms; lhs > rhs iff num > den.
  std::int64_t ratio_num = 0;
  std::int64_t ratio_den = 1;
  MetricReport pairwise;       // expected to fail
  MetricReport pairwise_root;  // power 1/6, holds
};

TetrahedronReport tetrahedron_counterexample();

/// Quadruple found by minimizing the 3-point simplex gap over z3 for a
/// random normalized (y, z1, z2), mapped back through a random similarity
/// and reordering, plus the outcome of matching it against the family.
struct EqualitySearchFinding {
  std::uint64_t seed;
  std::array<Complex, 4> quadruple;  // y, z1, z2, z3
  double relative_gap;
  bool converged;
  FamilyMatch match;
};

std::vector<EqualitySearchFinding> search_equality_cases(std::uint64_t seed, std::size_t trials);

}  // namespace vandermetric::geometry
