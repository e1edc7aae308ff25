#include "vandermetric/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gsl/gsl_multimin.h>

#include "vandermetric/core_metric.hpp"
#include "vandermetric/errors.hpp"
#include "vandermetric/random.hpp"
#include "vandermetric/selector.hpp"
#include "vandermetric/surd.hpp"

namespace vandermetric::geometry {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

nlohmann::json complex_json(Complex z) { return {z.real(), z.imag()}; }

Complex complex_from_json(const nlohmann::json& j) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 2) throw ArgumentError("expected a complex number as [re, im]");
  return {v[0], v[1]};
}

}  // namespace

CyclicPolygon::CyclicPolygon(double radius, std::vector<double> angles, Complex center)
    : radius_(radius), angles_(std::move(angles)), center_(center) {
  if (!std::isfinite(radius_) || radius_ <= 0.0) throw ArgumentError("cyclic polygon: radius must be positive");
  if (!std::isfinite(center_.real()) || !std::isfinite(center_.imag())) {
    throw ArgumentError("cyclic polygon: non-finite center");
  }
  if (angles_.size() < 3) throw ArgumentError("cyclic polygon: need at least 3 vertices");
  for (std::size_t k = 0; k < angles_.size(); ++k) {
    const double phi = angles_[k];
    if (!std::isfinite(phi) || phi < 0.0 || phi >= kTwoPi) {
      throw ArgumentError("cyclic polygon: angles must lie in [0, 2pi)");
    }
    if (k > 0 && !(phi > angles_[k - 1])) {
      throw ArgumentError("cyclic polygon: angles must be strictly increasing (distinct vertices)");
    }
  }
}

CyclicPolygon CyclicPolygon::regular(std::size_t n, double radius, double rotation, Complex center) {
  if (n < 3) throw ArgumentError("cyclic polygon: need at least 3 vertices");
  std::vector<double> angles(n);
  for (std::size_t k = 0; k < n; ++k) {
    double phi = std::fmod(rotation + kTwoPi * static_cast<double>(k) / static_cast<double>(n), kTwoPi);
    if (phi < 0.0) phi += kTwoPi;
    if (phi >= kTwoPi) phi = 0.0;
    angles[k] = phi;
  }
  std::sort(angles.begin(), angles.end());
  return CyclicPolygon(radius, std::move(angles), center);
}

std::vector<Complex> CyclicPolygon::vertices() const {
  std::vector<Complex> z;
  z.reserve(angles_.size());
  for (double phi : angles_) z.push_back(center_ + std::polar(radius_, phi));
  return z;
}

nlohmann::json to_json(const CyclicPolygon& poly) {
  return {{"R", poly.radius()}, {"angles", poly.angles()}, {"center", complex_json(poly.center())}};
}

CyclicPolygon polygon_from_json(const nlohmann::json& j) {
  const Complex center = j.contains("center") ? complex_from_json(j["center"]) : Complex{};
  return CyclicPolygon(j.at("R").get<double>(), j.at("angles").get<std::vector<double>>(), center);
}

bool is_equilateral(const CyclicPolygon& poly, double relative_tol) {
  const auto& phi = poly.angles();
  const double expected = kTwoPi / static_cast<double>(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const double g = k + 1 < phi.size() ? phi[k + 1] - phi[k] : kTwoPi + phi.front() - phi.back();
    if (std::abs(g - expected) > relative_tol * expected) return false;
  }
  return true;
}

bool has_equal_sides(const CyclicPolygon& poly, double relative_tol) {
  const auto z = poly.vertices();
  const std::size_t n = z.size();
  const double first = std::abs(z[1] - z[0]);
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(std::abs(z[(k + 1) % n] - z[k]) - first) > relative_tol * poly.radius()) return false;
  }
  return true;
}

EqualityFamilyPoint equality_family(double q, double s) {
  if (!(q > 0.0) || !(s > 0.0) || !std::isfinite(q) || !std::isfinite(s)) {
    throw ArgumentError("equality family: q and s must be positive and finite");
  }
  EqualityFamilyPoint p{q, s, {0.0, 0.0}, {1.0, 0.0}, {}, {}};
  p.z2 = Complex(-1.0, std::sqrt(q * (1.0 + s))) / s;
  p.z3 = Complex(-1.0, -std::sqrt((1.0 + s) / q)) / s;
  return p;
}

MetricReport equality_gap_3(Complex y, Complex z1, Complex z2, Complex z3, double tolerance) {
  auto d = [](Complex a, Complex b, Complex c) {
    const Complex z[3] = {a, b, c};
    return vandermonde_metric(z);
  };
  const double lhs = d(z1, z2, z3);
  const double rhs = d(y, z2, z3) + d(z1, y, z3) + d(z1, z2, y);
  nlohmann::json inputs{{"y", complex_json(y)}, {"z1", complex_json(z1)}, {"z2", complex_json(z2)},
                        {"z3", complex_json(z3)}};
  auto report = make_report("equality-gap-3", std::move(inputs), lhs, rhs, tolerance);
  report.equality = report.is_equality();
  return report;
}

FamilyMatch match_equality_family(Complex y, Complex z1, Complex z2, Complex z3, double tolerance) {
  const Complex z[3] = {z1, z2, z3};
  std::array<int, 3> order{0, 1, 2};
  FamilyMatch best;
  best.residual = INFINITY;
  do {
    const Complex unit = z[order[0]] - y;
    if (unit == Complex{}) continue;
    const Complex w2 = (z[order[1]] - y) / unit;
    const Complex w3 = (z[order[2]] - y) / unit;
    if (!(w2.real() < 0.0) || !(w2.imag() > 0.0)) continue;
    const double s = -1.0 / w2.real();
    const double q = w2.imag() * w2.imag() * s * s / (1.0 + s);
    const double residual = std::abs(w3 - equality_family(q, s).z3);
    if (residual < best.residual) {
      best.residual = residual;
      best.q = q;
      best.s = s;
      best.order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  best.matched = best.residual <= tolerance;
  return best;
}

namespace {

double side(const std::vector<Complex>& z, std::size_t i, std::size_t j) { return std::abs(z[i] - z[j]); }

void require_size(const CyclicPolygon& poly, std::size_t n, const char* what) {
  if (poly.size() != n) throw ArgumentError(std::string(what) + ": expected " + std::to_string(n) + " vertices");
}

}  // namespace

MetricReport triangle_check(const CyclicPolygon& poly, double tolerance) {
  require_size(poly, 3, "triangle check");
  const auto z = poly.vertices();
  const double a = side(z, 0, 1), b = side(z, 1, 2), c = side(z, 2, 0);
  const double r = poly.radius();
  auto report = make_report("triangle", to_json(poly), a * b * c, r * r * (a + b + c), tolerance);
  report.equality = report.is_equality();
  report.equilateral = has_equal_sides(poly);
  return report;
}

MetricReport quadrilateral_check(const CyclicPolygon& poly, double tolerance) {
  require_size(poly, 4, "quadrilateral check");
  const auto z = poly.vertices();
  const double a = side(z, 0, 1), b = side(z, 1, 2), c = side(z, 2, 3), d = side(z, 3, 0);
  const double e = side(z, 0, 2), f = side(z, 1, 3);
  const double r = poly.radius();
  auto report = make_report("quadrilateral", to_json(poly), a * b * c * d * e * f,
                            r * r * r * (a * b * e + b * c * f + c * d * e + a * d * f), tolerance);
  report.equality = report.is_equality();
  report.equilateral = has_equal_sides(poly);
  return report;
}

double ptolemy_defect(const CyclicPolygon& poly) {
  require_size(poly, 4, "ptolemy");
  const auto z = poly.vertices();
  const double ef = side(z, 0, 2) * side(z, 1, 3);
  const double acbd = side(z, 0, 1) * side(z, 2, 3) + side(z, 1, 2) * side(z, 3, 0);
  return std::abs(ef - acbd) / std::max(ef, acbd);
}

std::uint64_t factorial(std::size_t k) {
  if (k > 20) throw ArgumentError("factorial: " + std::to_string(k) + "! overflows 64 bits");
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

NgonConstant ngon_constant(std::size_t n) {
  if (n < 3) throw ArgumentError("n-gon constant: n must be >= 3");
  return {(n + 1) * (n - 2) / 2, n - 2};
}

InductiveConstant ngon_constant_inductive(std::size_t n) {
  if (n < 4) throw ArgumentError("n-gon induction: n must be >= 4");
  return {(n - 1) + n * (n - 3) / 2, (n - 2) * factorial(n - 3)};
}

MetricReport ngon_check(const CyclicPolygon& poly, double tolerance) {
  const auto z = poly.vertices();
  const std::size_t n = z.size();
  const auto constant = ngon_constant(n);
  const double r = poly.radius();
  double distance_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j + 1; i < n; ++i) distance_sum += side(z, i, j);
  }
  auto inputs = to_json(poly);
  if (n <= 20) {
    const double lhs = vandermonde_metric(z);
    const double rhs = std::pow(r, static_cast<double>(constant.radius_exponent)) *
                       static_cast<double>(factorial(constant.factorial_argument)) * distance_sum;
    if (std::isfinite(lhs) && std::isfinite(rhs) && lhs > 0.0) {
      inputs["log_domain"] = false;
      return make_report("ngon", std::move(inputs), lhs, rhs, tolerance);
    }
  }
  const double lhs = vandermonde_metric_log(z);
  const double rhs = static_cast<double>(constant.radius_exponent) * std::log(r) +
                     std::lgamma(static_cast<double>(constant.factorial_argument) + 1.0) + std::log(distance_sum);
  inputs["log_domain"] = true;
  return make_report("ngon", std::move(inputs), lhs, rhs, tolerance);
}

MetricReport simplex_equality_ngon(const CyclicPolygon& poly, double tolerance) {
  const auto z = poly.vertices();
  const double lhs = vandermonde_metric(z);
  std::vector<Complex> replaced = z;
  double rhs = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    replaced[i] = poly.center();
    rhs += vandermonde_metric(replaced);
    replaced[i] = z[i];
  }
  auto report = make_report("ngon-simplex-equality", to_json(poly), lhs, rhs, tolerance);
  report.equality = report.is_equality();
  report.equilateral = is_equilateral(poly);
  return report;
}

TetrahedronReport tetrahedron_counterexample() {
  const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);
  TetrahedronReport out;
  out.points = {{{1.0, 0.0, 0.0},
                 {-1.0 / 3.0, 2.0 * r2 / 3.0, 0.0},
                 {-1.0 / 3.0, -r2 / 3.0, r6 / 3.0},
                 {-1.0 / 3.0, -r2 / 3.0, -r6 / 3.0}}};

  // The same vertices in Q(sqrt2, sqrt3).
  using R = Surd::Rational;
  const R third(1, 3);
  const std::array<std::array<Surd, 3>, 4> exact{{
      {Surd::rational(1), Surd::rational(0), Surd::rational(0)},
      {Surd::rational(-third), Surd::sqrt2(2 * third), Surd::rational(0)},
      {Surd::rational(-third), Surd::sqrt2(-third), Surd::sqrt6(third)},
      {Surd::rational(-third), Surd::sqrt2(-third), Surd::sqrt6(-third)},
  }};
  auto squared = [](const std::array<Surd, 3>& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; };
  out.exact_geometry = true;
  for (const auto& v : exact) out.exact_geometry = out.exact_geometry && squared(v) == Surd::rational(1);
  Surd distance2 = Surd::rational(0);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = j + 1; i < 4; ++i) {
      const Surd d2 = squared({exact[i][0] - exact[j][0], exact[i][1] - exact[j][1], exact[i][2] - exact[j][2]});
      if (j == 0 && i == 1) distance2 = d2;
      out.exact_geometry = out.exact_geometry && d2 == distance2 && d2.is_rational();
    }
  }
  out.squared_distance_num = distance2.a.numerator();
  out.squared_distance_den = distance2.a.denominator();

  // lhs = D^3 and rhs = 4 D^(3/2) with D the squared edge, so
  // lhs^2 / rhs^2 = D^3 / 16.
  const R ratio = distance2.a * distance2.a * distance2.a / R(16);
  out.ratio_num = ratio.numerator();
  out.ratio_den = ratio.denominator();

  std::vector<double> coords;
  for (std::size_t k = 0; k < 4; ++k) {
    double s = 0.0;
    for (double c : out.points[k]) {
      coords.push_back(c);
      s += c * c;
    }
    out.norms[k] = std::sqrt(s);
  }
  const PointTuple t(3, coords);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = j + 1; i < 4; ++i) {
      double s = 0.0;
      for (std::size_t r = 0; r < 3; ++r) s += (out.points[i][r] - out.points[j][r]) * (out.points[i][r] - out.points[j][r]);
      out.distances[idx++] = std::sqrt(s);
    }
  }
  const double origin[3] = {0.0, 0.0, 0.0};
  out.pairwise = simplex_gap(t, origin, MetricSelector::of(MetricKind::pairwise));
  out.pairwise_root = simplex_gap(t, origin, MetricSelector::of(MetricKind::pairwise_root));
  return out;
}

namespace {

struct SearchContext {
  Complex z2;
};

double normalized_relative_gap(const gsl_vector* v, void* params) {
  const auto* ctx = static_cast<const SearchContext*>(params);
  const Complex z3(gsl_vector_get(v, 0), gsl_vector_get(v, 1));
  const auto r = equality_gap_3({0.0, 0.0}, {1.0, 0.0}, ctx->z2, z3);
  return r.gap / r.scale();
}

// Nelder-Mead over z3 from `start`; returns (z3, relative gap).
std::pair<Complex, double> minimize_gap(SearchContext& ctx, Complex start) {
  gsl_multimin_function fn{&normalized_relative_gap, 2, &ctx};
  gsl_vector* x = gsl_vector_alloc(2);
  gsl_vector* step = gsl_vector_alloc(2);
  gsl_vector_set(x, 0, start.real());
  gsl_vector_set(x, 1, start.imag());
  gsl_vector_set_all(step, 0.25);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
  gsl_multimin_fminimizer_set(s, &fn, x, step);
  for (int iter = 0; iter < 4000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(s) != 0) break;
    if (gsl_multimin_fminimizer_size(s) < 1e-13) break;
  }
  const Complex best(gsl_vector_get(s->x, 0), gsl_vector_get(s->x, 1));
  const double value = s->fval;
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return {best, value};
}

}  // namespace

std::vector<EqualitySearchFinding> search_equality_cases(std::uint64_t seed, std::size_t trials) {
  std::vector<EqualitySearchFinding> findings;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    Rng rng(trial_seed);
    SearchContext ctx{Complex(rng.uniform(-2.0, -0.1), rng.uniform(0.1, 2.0) * (rng.unit() < 0.5 ? -1.0 : 1.0))};
    std::pair<Complex, double> best{{}, INFINITY};
    for (int restart = 0; restart < 8; ++restart) {
      const auto candidate = minimize_gap(ctx, Complex(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)));
      if (candidate.second < best.second) best = candidate;
    }
    // Undo the normalization with a random similarity and reorder the z's.
    const Complex scale = std::polar(rng.uniform(0.2, 5.0), rng.uniform(0.0, kTwoPi));
    const Complex shift(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
    std::array<Complex, 3> zs{Complex(1.0, 0.0), ctx.z2, best.first};
    std::array<int, 3> order{0, 1, 2};
    for (long long k = rng.uniform_int(0, 5); k > 0; --k) std::next_permutation(order.begin(), order.end());
    EqualitySearchFinding f;
    f.seed = trial_seed;
    f.quadruple = {shift, shift + scale * zs[order[0]], shift + scale * zs[order[1]], shift + scale * zs[order[2]]};
    f.relative_gap = best.second;
    f.converged = best.second < 1e-12;
    f.match = match_equality_family(f.quadruple[0], f.quadruple[1], f.quadruple[2], f.quadruple[3]);
    findings.push_back(f);
  }
  return findings;
}

}  // namespace vandermetric::geometry
