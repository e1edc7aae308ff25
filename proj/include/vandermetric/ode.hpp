#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

// Linear systems x' = A(t) x and the contraction estimate
//   d_3(x1(t), x2(t), x3(t)) <= exp(3 int_0^t alpha) d_3(x1(0), x2(0), x3(0))
// for any alpha with <A(t) x, x> <= alpha(t) <x, x>.

namespace vandermetric::ode {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A(t) from a small serializable catalog.
class CoefficientFunction {
 public:
  enum class Kind { constant, linear, sinusoidal, sampled };

  static CoefficientFunction constant(Matrix a0);
  /// A0 + t A1.
  static CoefficientFunction linear(Matrix a0, Matrix a1);
  /// A0 + sin(omega t) A1.
  static CoefficientFunction sinusoidal(Matrix a0, Matrix a1, double omega);
  /// Piecewise linear through (times[k], samples[k]); constant outside.
  static CoefficientFunction sampled(std::vector<double> times, std::vector<Matrix> samples);

  Kind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(a0_.rows()); }
  Matrix operator()(double t) const;

  nlohmann::json to_json() const;
  static CoefficientFunction from_json(const nlohmann::json& j);

 private:
  Kind kind_ = Kind::constant;
  Matrix a0_;
  Matrix a1_;
  double omega_ = 0.0;
  std::vector<double> times_;
  std::vector<Matrix> samples_;
};

/// Largest eigenvalue of (A + A^T)/2: the smallest alpha with
/// <Ax, x> <= alpha <x, x> for all x.
double derive_alpha(const Matrix& a);

struct ODEProblem {
  CoefficientFunction coefficient = CoefficientFunction::constant(Matrix::Zero(2, 2));
  /// User-supplied growth bound; derived from A(t) when empty.
  std::optional<std::function<double(double)>> alpha;
  std::optional<double> alpha_constant;  // serializable form of `alpha`
  std::array<Vector, 3> initials;
  std::vector<double> grid;

  std::size_t dimension() const { return coefficient.dimension(); }
  double alpha_at(double t) const;
  /// Sizes and grid monotonicity; throws ArgumentError.
  void validate() const;

  nlohmann::json to_json() const;
  static ODEProblem from_json(const nlohmann::json& j);
};

std::vector<double> uniform_grid(double t_end, std::size_t steps);

/// Largest <A(t)x, x> - alpha(t) <x, x> over the grid times and the given
/// unit vectors; <= 0 when alpha is a valid bound.
double alpha_violation(const ODEProblem& problem, const std::vector<Vector>& unit_vectors);

struct IntegratorOptions {
  /// Bound on the step-doubling estimate of the local error relative to
  /// the state norm; 0 disables the guard.
  double max_relative_step_error = 1e-8;
};

/// Classical 4th-order Runge-Kutta on the grid; states[k] = x(grid[k]).
/// Throws StepSizeError when the guard trips.
std::vector<Vector> integrate_single(const CoefficientFunction& a, const Vector& x0,
                                     const std::vector<double>& grid,
                                     const IntegratorOptions& options = {});

struct Trajectories {
  std::vector<double> grid;
  std::array<std::vector<Vector>, 3> states;
};

Trajectories integrate(const ODEProblem& problem, const IntegratorOptions& options = {});

/// max_k |x_{1+2}(t_k) - x_1(t_k) - x_2(t_k)| / max(|x_{1+2}(t_k)|, 1e-300),
/// with x_{1+2} integrated from x1^0 + x2^0.
double linearity_defect(const ODEProblem& problem, const Trajectories& traj);

double d3(const Vector& x1, const Vector& x2, const Vector& x3);

struct EstimateRecord {
  double t;
  double lhs;
  double rhs;
  double gap;
  double alpha_integral;
  bool pass;
  bool near_collision;  // min pairwise distance <= 1e-12, reported only
};

inline constexpr double kEstimateTol = 1e-6;

/// Per grid point: lhs = d_3(x(t)), rhs = exp(3 int_0^t alpha) d_3(x(0)),
/// with the integral by Simpson's rule on every grid interval (alpha at both
/// ends and the midpoint). pass iff lhs <= rhs (1 + kEstimateTol); if
/// d_3(x(0)) = 0, pass iff lhs <= 1e-9 max(1, max_j |x_j(t)|)^3.
std::vector<EstimateRecord> verify_estimate(const ODEProblem& problem, const Trajectories& traj);
std::vector<EstimateRecord> verify_estimate(const ODEProblem& problem);

nlohmann::json to_json(const EstimateRecord& record);

}  // namespace vandermetric::ode
