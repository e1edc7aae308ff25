#include "vandermetric/ode.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "vandermetric/errors.hpp"
#include "vandermetric/report.hpp"

namespace vandermetric::ode {

namespace {

Matrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.get<std::vector<std::vector<double>>>();
  if (rows.empty()) throw ArgumentError("ode: empty matrix");
  Matrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) throw ArgumentError("ode: ragged matrix");
    for (std::size_t k = 0; k < rows[i].size(); ++k) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
  }
  return a;
}

nlohmann::json matrix_to_json(const Matrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(a.cols()));
    for (Eigen::Index k = 0; k < a.cols(); ++k) row[static_cast<std::size_t>(k)] = a(i, k);
    rows.push_back(row);
  }
  return rows;
}

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) throw ArgumentError(std::string("ode: ") + what + " must be square");
  if (!a.allFinite()) throw ArgumentError(std::string("ode: ") + what + " has non-finite entries");
}

}  // namespace

CoefficientFunction CoefficientFunction::constant(Matrix a0) {
  require_square(a0, "A0");
  CoefficientFunction f;
  f.kind_ = Kind::constant;
  f.a0_ = std::move(a0);
  return f;
}

CoefficientFunction CoefficientFunction::linear(Matrix a0, Matrix a1) {
  require_square(a0, "A0");
  require_square(a1, "A1");
  if (a0.rows() != a1.rows()) throw ArgumentError("ode: A0 and A1 differ in size");
  CoefficientFunction f;
  f.kind_ = Kind::linear;
  f.a0_ = std::move(a0);
  f.a1_ = std::move(a1);
  return f;
}

CoefficientFunction CoefficientFunction::sinusoidal(Matrix a0, Matrix a1, double omega) {
  auto f = linear(std::move(a0), std::move(a1));
  if (!std::isfinite(omega)) throw ArgumentError("ode: non-finite omega");
  f.kind_ = Kind::sinusoidal;
  f.omega_ = omega;
  return f;
}

CoefficientFunction CoefficientFunction::sampled(std::vector<double> times, std::vector<Matrix> samples) {
  if (times.empty() || times.size() != samples.size()) {
    throw ArgumentError("ode: sampled coefficient needs one matrix per time");
  }
  for (std::size_t k = 0; k < samples.size(); ++k) {
    require_square(samples[k], "sample");
    if (samples[k].rows() != samples.front().rows()) throw ArgumentError("ode: samples differ in size");
    if (k > 0 && !(times[k] > times[k - 1])) throw ArgumentError("ode: sample times must be strictly increasing");
  }
  CoefficientFunction f;
  f.kind_ = Kind::sampled;
  f.a0_ = samples.front();
  f.times_ = std::move(times);
  f.samples_ = std::move(samples);
  return f;
}

Matrix CoefficientFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::constant: return a0_;
    case Kind::linear: return a0_ + t * a1_;
    case Kind::sinusoidal: return a0_ + std::sin(omega_ * t) * a1_;
    case Kind::sampled: {
      if (t <= times_.front()) return samples_.front();
      if (t >= times_.back()) return samples_.back();
      const auto hi = static_cast<std::size_t>(std::upper_bound(times_.begin(), times_.end(), t) - times_.begin());
      const std::size_t lo = hi - 1;
      const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
      return (1.0 - w) * samples_[lo] + w * samples_[hi];
    }
  }
  return a0_;
}

nlohmann::json CoefficientFunction::to_json() const {
  switch (kind_) {
    case Kind::constant: return {{"kind", "constant"}, {"A0", matrix_to_json(a0_)}};
    case Kind::linear: return {{"kind", "linear"}, {"A0", matrix_to_json(a0_)}, {"A1", matrix_to_json(a1_)}};
    case Kind::sinusoidal:
      return {{"kind", "sinusoidal"}, {"A0", matrix_to_json(a0_)}, {"A1", matrix_to_json(a1_)}, {"omega", omega_}};
    case Kind::sampled: {
      nlohmann::json samples = nlohmann::json::array();
      for (const auto& s : samples_) samples.push_back(matrix_to_json(s));
      return {{"kind", "sampled"}, {"times", times_}, {"samples", samples}};
    }
  }
  return {};
}

CoefficientFunction CoefficientFunction::from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "constant") return constant(matrix_from_json(j.at("A0")));
  if (kind == "linear") return linear(matrix_from_json(j.at("A0")), matrix_from_json(j.at("A1")));
  if (kind == "sinusoidal") {
    return sinusoidal(matrix_from_json(j.at("A0")), matrix_from_json(j.at("A1")), j.at("omega").get<double>());
  }
  if (kind == "sampled") {
    std::vector<Matrix> samples;
    for (const auto& s : j.at("samples")) samples.push_back(matrix_from_json(s));
    return sampled(j.at("times").get<std::vector<double>>(), std::move(samples));
  }
  throw ArgumentError("ode: unknown coefficient kind '" + kind + "'");
}

double derive_alpha(const Matrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("derive_alpha: matrix must be square");
  if (a.rows() == 0) throw ArgumentError("derive_alpha: empty matrix");
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double ODEProblem::alpha_at(double t) const {
  if (alpha) return (*alpha)(t);
  if (alpha_constant) return *alpha_constant;
  return derive_alpha(coefficient(t));
}

void ODEProblem::validate() const {
  const auto m = static_cast<Eigen::Index>(dimension());
  for (const auto& x : initials) {
    if (x.size() != m) throw ArgumentError("ode: initial value dimension differs from A");
    if (!x.allFinite()) throw ArgumentError("ode: non-finite initial value");
  }
  if (grid.size() < 2) throw ArgumentError("ode: grid needs at least two times");
  if (grid.front() != 0.0) throw ArgumentError("ode: grid must start at t = 0");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1]) || !std::isfinite(grid[k])) {
      throw ArgumentError("ode: grid must be strictly increasing");
    }
  }
  if (alpha || alpha_constant) {
    // a supplied bound must dominate the sharp one wherever alpha is sampled
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double ts[2] = {grid[k], k + 1 < grid.size() ? 0.5 * (grid[k] + grid[k + 1]) : grid[k]};
      for (double t : ts) {
        const double given = alpha_at(t);
        const double sharp = derive_alpha(coefficient(t));
        if (!(given >= sharp - 1e-10 * std::max(1.0, std::abs(sharp)))) {
          throw ArgumentError("ode: supplied alpha " + std::to_string(given) + " is below the bound " +
                              std::to_string(sharp) + " at t = " + std::to_string(t));
        }
      }
    }
  }
}

nlohmann::json ODEProblem::to_json() const {
  nlohmann::json inits = nlohmann::json::array();
  for (const auto& x : initials) inits.push_back(std::vector<double>(x.data(), x.data() + x.size()));
  nlohmann::json j{{"coefficient", coefficient.to_json()}, {"initials", inits}, {"grid", grid}};
  j["alpha"] = alpha_constant ? nlohmann::json(*alpha_constant) : nlohmann::json("derived");
  return j;
}

ODEProblem ODEProblem::from_json(const nlohmann::json& j) {
  ODEProblem p;
  p.coefficient = CoefficientFunction::from_json(j.at("coefficient"));
  const auto inits = j.at("initials").get<std::vector<std::vector<double>>>();
  if (inits.size() != 3) throw ArgumentError("ode: exactly three initial values are required");
  for (std::size_t k = 0; k < 3; ++k) p.initials[k] = Eigen::Map<const Vector>(inits[k].data(), static_cast<Eigen::Index>(inits[k].size()));
  const auto& g = j.at("grid");
  if (g.is_object()) {
    p.grid = uniform_grid(g.at("t_end").get<double>(), g.at("steps").get<std::size_t>());
  } else {
    p.grid = g.get<std::vector<double>>();
  }
  if (j.contains("alpha") && j["alpha"].is_number()) p.alpha_constant = j["alpha"].get<double>();
  p.validate();
  return p;
}

std::vector<double> uniform_grid(double t_end, std::size_t steps) {
  if (steps == 0 || !(t_end > 0.0) || !std::isfinite(t_end)) throw ArgumentError("ode: grid needs t_end > 0 and steps >= 1");
  std::vector<double> grid(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) grid[k] = t_end * static_cast<double>(k) / static_cast<double>(steps);
  return grid;
}

double alpha_violation(const ODEProblem& problem, const std::vector<Vector>& unit_vectors) {
  double worst = -INFINITY;
  for (double t : problem.grid) {
    const Matrix a = problem.coefficient(t);
    const double alpha = problem.alpha_at(t);
    for (const auto& x : unit_vectors) worst = std::max(worst, x.dot(a * x) - alpha * x.dot(x));
  }
  return worst;
}

namespace {

Vector rk4_step(const CoefficientFunction& a, const Vector& x, double t, double h) {
  const Matrix a_mid = a(t + 0.5 * h);
  const Vector k1 = a(t) * x;
  const Vector k2 = a_mid * (x + 0.5 * h * k1);
  const Vector k3 = a_mid * (x + 0.5 * h * k2);
  const Vector k4 = a(t + h) * (x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

std::vector<Vector> integrate_single(const CoefficientFunction& a, const Vector& x0, const std::vector<double>& grid,
                                     const IntegratorOptions& options) {
  if (x0.size() != static_cast<Eigen::Index>(a.dimension())) throw ArgumentError("ode: initial value dimension differs from A");
  std::vector<Vector> states;
  states.reserve(grid.size());
  states.push_back(x0);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double t = grid[k];
    const double h = grid[k + 1] - t;
    const Vector& x = states.back();
    Vector full = rk4_step(a, x, t, h);
    if (options.max_relative_step_error > 0.0) {
      const Vector half = rk4_step(a, rk4_step(a, x, t, 0.5 * h), t + 0.5 * h, 0.5 * h);
      const double norm = std::max(half.norm(), x.norm());
      const double estimate = (full - half).norm() / 15.0;
      if (norm > 0.0 && estimate > options.max_relative_step_error * norm) {
        const double ratio = estimate / (options.max_relative_step_error * norm);
        const double refine = 1.25 * std::pow(ratio, 0.2);
        const auto suggested = static_cast<std::size_t>(std::ceil(static_cast<double>(grid.size() - 1) * refine));
        throw StepSizeError("ode: step-doubling error estimate " + std::to_string(estimate / norm) + " at t = " +
                                std::to_string(t) + " exceeds the bound; try a uniform grid with " +
                                std::to_string(suggested) + " steps",
                            suggested);
      }
    }
    states.push_back(std::move(full));
  }
  return states;
}

Trajectories integrate(const ODEProblem& problem, const IntegratorOptions& options) {
  problem.validate();
  Trajectories traj;
  traj.grid = problem.grid;
  for (std::size_t j = 0; j < 3; ++j) traj.states[j] = integrate_single(problem.coefficient, problem.initials[j], problem.grid, options);
  return traj;
}

double linearity_defect(const ODEProblem& problem, const Trajectories& traj) {
  const auto sum = integrate_single(problem.coefficient, problem.initials[0] + problem.initials[1], problem.grid,
                                    IntegratorOptions{0.0});
  double worst = 0.0;
  for (std::size_t k = 0; k < sum.size(); ++k) {
    const double scale = std::max(sum[k].norm(), 1e-300);
    worst = std::max(worst, (sum[k] - traj.states[0][k] - traj.states[1][k]).norm() / scale);
  }
  return worst;
}

double d3(const Vector& x1, const Vector& x2, const Vector& x3) {
  return (x1 - x2).norm() * (x1 - x3).norm() * (x2 - x3).norm();
}

std::vector<EstimateRecord> verify_estimate(const ODEProblem& problem, const Trajectories& traj) {
  const double d0 = d3(problem.initials[0], problem.initials[1], problem.initials[2]);
  std::vector<EstimateRecord> records;
  records.reserve(traj.grid.size());
  double integral = 0.0;
  for (std::size_t k = 0; k < traj.grid.size(); ++k) {
    if (k > 0) {
      const double a = traj.grid[k - 1], b = traj.grid[k];
      integral += (b - a) / 6.0 * (problem.alpha_at(a) + 4.0 * problem.alpha_at(0.5 * (a + b)) + problem.alpha_at(b));
    }
    const Vector& x1 = traj.states[0][k];
    const Vector& x2 = traj.states[1][k];
    const Vector& x3 = traj.states[2][k];
    EstimateRecord r{};
    r.t = traj.grid[k];
    r.alpha_integral = integral;
    r.lhs = d3(x1, x2, x3);
    r.rhs = std::exp(3.0 * integral) * d0;
    r.gap = r.rhs - r.lhs;
    r.near_collision = std::min({(x1 - x2).norm(), (x1 - x3).norm(), (x2 - x3).norm()}) <= 1e-12;
    if (d0 == 0.0) {
      const double scale = std::max({1.0, x1.norm(), x2.norm(), x3.norm()});
      r.pass = r.lhs <= 1e-9 * scale * scale * scale;
    } else {
      r.pass = r.near_collision || r.lhs <= r.rhs * (1.0 + kEstimateTol);
    }
    records.push_back(r);
  }
  return records;
}

std::vector<EstimateRecord> verify_estimate(const ODEProblem& problem) {
  return verify_estimate(problem, integrate(problem));
}

nlohmann::json to_json(const EstimateRecord& r) {
  return {{"t", r.t},
          {"lhs", number_to_json(r.lhs)},
          {"rhs", number_to_json(r.rhs)},
          {"gap", number_to_json(r.gap)},
          {"alpha_integral", r.alpha_integral},
          {"pass", r.pass},
          {"near_collision", r.near_collision}};
}

}  // namespace vandermetric::ode
