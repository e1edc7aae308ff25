#include <doctest.h>

#include <cmath>
#include <random>

#include "vandermetric/errors.hpp"
#include "vandermetric/ode.hpp"

using namespace vandermetric;
using namespace vandermetric::ode;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double c : v) x(k++) = c;
  return x;
}

ODEProblem problem_with(CoefficientFunction a, std::array<Vector, 3> init, std::vector<double> grid) {
  ODEProblem p;
  p.coefficient = std::move(a);
  p.initials = std::move(init);
  p.grid = std::move(grid);
  return p;
}

/// Exact solution of x' = [[0,w],[-w,0]] x.
Vector rotation(const Vector& x0, double w, double t) {
  return vec({std::cos(w * t) * x0(0) + std::sin(w * t) * x0(1), -std::sin(w * t) * x0(0) + std::cos(w * t) * x0(1)});
}

}  // namespace

TEST_CASE("derived alpha") {
  CHECK(derive_alpha(-Matrix::Identity(3, 3)) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(derive_alpha(mat2(0, 1, -1, 0))) <= 1e-14);
  CHECK(derive_alpha(mat2(1, 2, 0, 1)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(derive_alpha(Matrix::Zero(2, 3)), ArgumentError);

  std::mt19937_64 g(41);
  std::uniform_real_distribution<double> u(-1, 1);
  std::normal_distribution<double> nrm;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index m = 2 + trial % 3;
    Matrix a(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) a(i, j) = u(g);
    }
    Vector x(m);
    for (Eigen::Index i = 0; i < m; ++i) x(i) = nrm(g);
    x.normalize();
    CHECK(x.dot(a * x) <= derive_alpha(a) + 1e-10);
  }
}

TEST_CASE("coefficient catalog") {
  const Matrix a0 = mat2(1, 2, 3, 4), a1 = mat2(0, 1, 1, 0);
  CHECK(CoefficientFunction::constant(a0)(5.0) == a0);
  CHECK(CoefficientFunction::linear(a0, a1)(2.0) == a0 + 2.0 * a1);
  CHECK(CoefficientFunction::sinusoidal(a0, a1, 3.0)(0.5).isApprox(a0 + std::sin(1.5) * a1));
  const auto s = CoefficientFunction::sampled({0.0, 1.0}, {a0, a1});
  CHECK(s(0.25).isApprox(0.75 * a0 + 0.25 * a1));
  CHECK(s(-1.0) == a0);
  CHECK(s(9.0) == a1);
  for (const auto& c : {CoefficientFunction::constant(a0), CoefficientFunction::linear(a0, a1),
                        CoefficientFunction::sinusoidal(a0, a1, 3.0), s}) {
    const auto back = CoefficientFunction::from_json(c.to_json());
    CHECK(back.kind() == c.kind());
    CHECK(back(0.7) == c(0.7));
  }
}

TEST_CASE("integrator on closed-form systems") {
  const auto grid = uniform_grid(1.0, 100);
  const Vector x0 = vec({0.3, -1.2});

  const auto decay = integrate_single(CoefficientFunction::constant(-Matrix::Identity(2, 2)), x0, grid);
  CHECK((decay.back() - std::exp(-1.0) * x0).norm() <= 1e-9 * (std::exp(-1.0) * x0).norm());

  const auto still = integrate_single(CoefficientFunction::constant(Matrix::Zero(2, 2)), x0, grid);
  for (const auto& x : still) CHECK(x == x0);

  const auto rot = integrate_single(CoefficientFunction::constant(mat2(0, 2, -2, 0)), x0, uniform_grid(3.0, 600));
  for (const auto& x : rot) CHECK(std::abs(x.norm() - x0.norm()) <= 1e-8 * x0.norm());
}

TEST_CASE("fourth order convergence") {
  const Vector x0 = vec({1.0, 0.5});
  const double w = 3.0;
  auto max_error = [&](std::size_t steps) {
    const auto grid = uniform_grid(2.0, steps);
    IntegratorOptions loose;
    loose.max_relative_step_error = 0.0;
    const auto xs = integrate_single(CoefficientFunction::constant(mat2(0, w, -w, 0)), x0, grid, loose);
    double e = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) e = std::max(e, (xs[k] - rotation(x0, w, grid[k])).norm());
    return e;
  };
  double prev = max_error(20);
  for (std::size_t steps : {40u, 80u, 160u}) {
    const double e = max_error(steps);
    CHECK(prev / e >= 12.0);
    CHECK(prev / e <= 20.0);
    prev = e;
  }
}

TEST_CASE("step guard refuses coarse grids and suggests a finer one") {
  const Vector x0 = vec({1.0, 0.0});
  const auto a = CoefficientFunction::constant(mat2(0, 20, -20, 0));
  try {
    integrate_single(a, x0, uniform_grid(1.0, 10));
    FAIL("expected StepSizeError");
  } catch (const StepSizeError& e) {
    CHECK(e.suggested_steps() > 10);
    CHECK_NOTHROW(integrate_single(a, x0, uniform_grid(1.0, e.suggested_steps())));
  }
}

TEST_CASE("problem validation") {
  auto p = problem_with(CoefficientFunction::constant(-Matrix::Identity(2, 2)),
                        {vec({0, 0}), vec({1, 0}), vec({0, 1})}, uniform_grid(1.0, 10));
  CHECK_NOTHROW(p.validate());
  auto bad = p;
  bad.grid = {0.0, 0.5, 0.5};
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad.grid = {0.1, 0.5};
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad = p;
  bad.initials[2] = vec({1, 2, 3});
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad = p;
  bad.alpha_constant = -2.0;  // below the sharp bound -1
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad.alpha_constant = 0.5;  // loose but valid
  CHECK_NOTHROW(bad.validate());
  CHECK(alpha_violation(bad, {vec({1, 0}), vec({0, 1}), vec({std::sqrt(0.5), std::sqrt(0.5)})}) <= 0.0);

  const auto j = p.to_json();
  const auto q = ODEProblem::from_json(j);
  CHECK(q.grid == p.grid);
  CHECK(q.to_json() == j);
  const auto r = ODEProblem::from_json(nlohmann::json::parse(
      R"({"coefficient":{"kind":"constant","A0":[[-1,0],[0,-1]]},"initials":[[0,0],[1,0],[0,1]],"grid":{"t_end":2,"steps":4}})"));
  CHECK(r.grid == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
}

TEST_CASE("estimate equality case for A = -I") {
  const auto p = problem_with(CoefficientFunction::constant(-Matrix::Identity(2, 2)),
                              {vec({0, 0}), vec({1, 0}), vec({0, 1})}, uniform_grid(2.0, 200));
  const auto recs = verify_estimate(p);
  REQUIRE(recs.size() == 201);
  for (const auto& r : recs) {
    const double exact = std::exp(-3.0 * r.t) * std::sqrt(2.0);
    CHECK(std::abs(r.lhs - exact) <= 1e-8);
    CHECK(std::abs(r.rhs - exact) <= 1e-8);
    CHECK(r.alpha_integral == doctest::Approx(-r.t).epsilon(1e-12));
    CHECK(r.pass);
  }
}

TEST_CASE("estimate under rotation and for coincident initials") {
  const auto rot = problem_with(CoefficientFunction::constant(mat2(0, 1, -1, 0)),
                                {vec({0.2, 0}), vec({1, 0.4}), vec({-0.3, 1})}, uniform_grid(3.0, 300));
  const auto d0 = d3(rot.initials[0], rot.initials[1], rot.initials[2]);
  for (const auto& r : verify_estimate(rot)) {
    CHECK(std::abs(r.lhs - d0) <= 1e-8 * d0);
    CHECK(r.rhs == doctest::Approx(d0).epsilon(1e-12));
    CHECK(r.pass);
  }

  const auto same = problem_with(CoefficientFunction::linear(mat2(0.1, 1, 0, -0.5), mat2(0, 0.3, 0.2, 0)),
                                 {vec({1, 1}), vec({1, 1}), vec({0, 2})}, uniform_grid(2.0, 200));
  for (const auto& r : verify_estimate(same)) {
    CHECK(r.lhs == 0.0);
    CHECK(r.pass);
  }
}

TEST_CASE("linearity of the flow") {
  const auto p = problem_with(CoefficientFunction::sinusoidal(mat2(0.1, 1, -1, 0.2), mat2(0.5, 0, 0.3, -0.4), 2.0),
                              {vec({1, 0}), vec({0.2, 0.5}), vec({-1, 1})}, uniform_grid(2.0, 400));
  CHECK(linearity_defect(p, integrate(p)) <= 1e-9);
}

TEST_CASE("random time-varying problems satisfy the estimate") {
  std::mt19937_64 g(42);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index m = 2 + trial % 3;
    Matrix a0(m, m), a1(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        a0(i, j) = u(g);
        a1(i, j) = u(g);
      }
    }
    std::array<Vector, 3> init;
    for (auto& x : init) {
      x.resize(m);
      for (Eigen::Index i = 0; i < m; ++i) x(i) = u(g);
    }
    const auto p = problem_with(CoefficientFunction::linear(a0, a1), init, uniform_grid(2.0, 400));
    for (const auto& r : verify_estimate(p)) {
      REQUIRE(r.pass);
      CHECK(r.lhs <= r.rhs * (1 + kEstimateTol));
    }
  }
}
