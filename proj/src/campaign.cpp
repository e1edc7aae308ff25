#include "vandermetric/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vandermetric/core_metric.hpp"
#include "vandermetric/errors.hpp"
#include "vandermetric/geometry.hpp"
#include "vandermetric/multilinear.hpp"
#include "vandermetric/ode.hpp"
#include "vandermetric/random.hpp"

namespace vandermetric {

namespace ml = multilinear;
using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_identity_op(CampaignOp op) {
  switch (op) {
    case CampaignOp::expansion:
    case CampaignOp::expansion_exact:
    case CampaignOp::sum_identity:
    case CampaignOp::w_identity:
    case CampaignOp::equality_family:
    case CampaignOp::reduction:
    case CampaignOp::homogeneity:
      return true;
    default:
      return false;
  }
}

PointTuple random_tuple(Rng& rng, std::size_t n, std::size_t dim, double lo, double hi) {
  std::vector<double> coords(n * dim);
  for (auto& c : coords) c = rng.uniform(lo, hi);
  return PointTuple(dim, std::move(coords));
}

std::vector<double> random_point(Rng& rng, std::size_t dim, double lo, double hi) {
  std::vector<double> p(dim);
  for (auto& c : p) c = rng.uniform(lo, hi);
  return p;
}

std::vector<Complex> complex_list(const json& j) {
  std::vector<Complex> z;
  for (const auto& v : j) z.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  return z;
}

Complex complex_value(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json complex_json(Complex z) { return {z.real(), z.imag()}; }

// --- identity-style reports -------------------------------------------------

json identity_report(const std::string& op, json inputs, const ml::IdentityGap& g, double tol) {
  return {{"operation", op},
          {"inputs", std::move(inputs)},
          {"gap", number_to_json(g.gap)},
          {"scale", number_to_json(g.scale)},
          {"relative_gap", number_to_json(g.gap / g.scale)},
          {"tolerance", tol},
          {"pass", g.within(tol)}};
}

json expansion_check(const PointTuple& t, double tol) {
  const auto spec = ml::spec_for(t);
  return identity_report("expansion", {{"tuple", to_json(t)}}, ml::expansion_gap(spec, t), tol);
}

json expansion_exact_check(const std::vector<std::vector<long long>>& points) {
  const std::size_t n = points.size();
  const std::size_t m = points.front().size();
  std::vector<ml::ExactInt> coords;
  for (const auto& p : points) coords.insert(coords.end(), p.begin(), p.end());
  const ml::MultilinearMapSpec spec{n, m, 0};
  const std::span<const ml::ExactInt> cv(coords);
  const auto product = ml::product_difference_form<ml::ExactInt>(spec, cv);
  const auto expansion = ml::permutation_expansion<ml::ExactInt>(spec, cv);
  std::size_t mismatched = 0;
  for (std::size_t c = 0; c < product.size(); ++c) mismatched += product[c] != expansion[c] ? 1 : 0;
  return {{"operation", "expansion-exact"},
          {"inputs", {{"tuple", points}}},
          {"mismatched_components", mismatched},
          {"relative_gap", mismatched == 0 ? 0.0 : 1.0},
          {"pass", mismatched == 0}};
}

json sum_identity_check(const PointTuple& t, const std::vector<double>& y, double tol) {
  const auto spec = ml::spec_for(t);
  return identity_report("sum-identity", {{"tuple", to_json(t)}, {"y", y}}, ml::sum_identity_gap(spec, t, y), tol);
}

json w_identity_check(const PointTuple& t, const std::vector<double>& y, std::size_t q, double tol) {
  const auto spec = ml::spec_for(t, q - 1);
  const auto result = ml::w_identity_gap(spec, t, y, q);
  auto report = identity_report("w-identity", {{"tuple", to_json(t)}, {"y", y}, {"q", q}}, result.identity, tol);
  report["norm_inequality"] = to_json(result.norm_inequality);
  report["pass"] = report["pass"].get<bool>() && result.norm_inequality.pass;
  return report;
}

json equality_family_check(double q, double s, double tol) {
  const auto p = geometry::equality_family(q, s);
  const auto r = geometry::equality_gap_3(p.y, p.z1, p.z2, p.z3, tol);
  const ml::IdentityGap g{std::abs(r.gap), r.scale()};
  auto report = identity_report("equality-family", {{"q", q}, {"s", s}}, g, tol);
  report["lhs"] = r.lhs;
  report["rhs"] = r.rhs;
  return report;
}

json reduction_check(const PointTuple& t, double tol) {
  const double generalized = ml::generalized_metric(ml::spec_for(t), t, MonotoneNorm::euclidean());
  const double complex_dv = vandermonde_metric(t.to_complex());
  const double scale = std::max(std::abs(complex_dv), 1e-300);
  const ml::IdentityGap g{std::abs(generalized - complex_dv) / scale, 1.0};
  auto report = identity_report("reduction", {{"tuple", to_json(t)}}, g, tol);
  report["generalized"] = generalized;
  report["vandermonde"] = complex_dv;
  return report;
}

// Relative homogeneity defects for d_V (complex lambda), the root metric and
// the generalized metric (real lambda on R^3 points).
json homogeneity_check(const PointTuple& planar, Complex lambda, const PointTuple& spatial, double real_lambda,
                       double tol) {
  auto z = planar.to_complex();
  std::vector<Complex> scaled(z.size());
  std::transform(z.begin(), z.end(), scaled.begin(), [&](Complex v) { return lambda * v; });
  const double pairs = static_cast<double>(z.size() * (z.size() - 1) / 2);
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  const double dv = rel(vandermonde_metric(scaled), std::pow(std::abs(lambda), pairs) * vandermonde_metric(z));
  const double root = rel(root_metric(scaled), std::abs(lambda) * root_metric(z));

  std::vector<double> coords(spatial.coordinates().begin(), spatial.coordinates().end());
  for (auto& c : coords) c *= real_lambda;
  const PointTuple spatial_scaled(spatial.dimension(), coords);
  const auto spec = ml::spec_for(spatial);
  const double gm = rel(ml::generalized_metric(spec, spatial_scaled, MonotoneNorm::euclidean()),
                        std::pow(std::abs(real_lambda), static_cast<double>(spec.pair_arity())) *
                            ml::generalized_metric(spec, spatial, MonotoneNorm::euclidean()));
  const ml::IdentityGap g{std::max({dv, root, gm}), 1.0};
  auto report = identity_report("homogeneity",
                                {{"planar", to_json(planar)},
                                 {"lambda", complex_json(lambda)},
                                 {"spatial", to_json(spatial)},
                                 {"real_lambda", real_lambda}},
                                g, tol);
  report["defects"] = {{"vandermonde", dv}, {"root", root}, {"generalized", gm}};
  return report;
}

// --- batches ---------------------------------------------------------------

json batch(const std::string& op, std::vector<json> reports) {
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.at("pass").get<bool>();
  return {{"operation", op}, {"reports", std::move(reports)}, {"pass", pass}};
}

double relative_of(const json& r, bool identity) {
  if (r.contains("reports")) {
    double worst = identity ? 0.0 : INFINITY;
    for (const auto& sub : r["reports"]) {
      const double v = relative_of(sub, identity);
      worst = identity ? std::max(worst, v) : std::min(worst, v);
    }
    return worst;
  }
  if (r.contains("relative_gap")) return number_from_json(r["relative_gap"]);
  if (r.contains("relative_margin")) return number_from_json(r["relative_margin"]);
  const double lhs = number_from_json(r.at("lhs"));
  const double rhs = number_from_json(r.at("rhs"));
  return (rhs - lhs) / tolerance_scale(lhs, rhs);
}

json extended_batch(const std::vector<Complex>& z, Complex y, double tol) {
  std::vector<json> reports;
  for (int k = 0; k < static_cast<int>(z.size()); ++k) reports.push_back(to_json(extended_inequality_gap(z, y, k, tol)));
  return batch("extended-batch", std::move(reports));
}

json w_identity_batch(const PointTuple& t, const std::vector<double>& y, double tol) {
  std::vector<json> reports;
  for (std::size_t q = 1; q <= t.size(); ++q) reports.push_back(w_identity_check(t, y, q, tol));
  return batch("w-identity-batch", std::move(reports));
}

json ptolemy_check(const geometry::CyclicPolygon& quad, double tol) {
  const double defect = geometry::ptolemy_defect(quad);
  return {{"operation", "ptolemy"},
          {"inputs", geometry::to_json(quad)},
          {"relative_gap", defect},
          {"relative_margin", tol - defect},
          {"tolerance", tol},
          {"pass", defect <= tol}};
}

// The ngon-simplex-equality flags must agree on a random (non-regular)
// polygon; the inequality itself must hold.
json ngon_equality_json(const geometry::CyclicPolygon& poly, double tol) {
  auto r = geometry::simplex_equality_ngon(poly, tol);
  auto j = to_json(r);
  j["flags_agree"] = *r.equality == *r.equilateral;
  j["pass"] = r.pass && *r.equality == *r.equilateral;
  return j;
}

geometry::CyclicPolygon random_polygon(Rng& rng, std::size_t n) {
  const double radius = rng.log_uniform(0.2, 5.0);
  const Complex center(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
  for (;;) {
    std::vector<double> angles(n);
    for (auto& a : angles) a = rng.uniform(0.0, kTwoPi);
    std::sort(angles.begin(), angles.end());
    bool separated = true;
    for (std::size_t k = 1; k < n; ++k) separated = separated && angles[k] - angles[k - 1] > 1e-6;
    if (separated) return geometry::CyclicPolygon(radius, std::move(angles), center);
  }
}

json polygon_batch(const geometry::CyclicPolygon& tri, const geometry::CyclicPolygon& quad,
                   const geometry::CyclicPolygon& ngon, double tol) {
  return batch("polygon-batch", {to_json(geometry::triangle_check(tri, tol)),
                                 to_json(geometry::quadrilateral_check(quad, tol)), ptolemy_check(quad, 1e-10),
                                 to_json(geometry::ngon_check(ngon, tol)), ngon_equality_json(ngon, tol)});
}

ode::Matrix random_matrix(Rng& rng, std::size_t m) {
  ode::Matrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) a(i, k) = rng.uniform(-1.0, 1.0);
  }
  return a;
}

json ode_check(ode::ODEProblem problem) {
  std::size_t attempts = 0;
  for (;;) {
    try {
      const auto traj = ode::integrate(problem);
      const auto records = ode::verify_estimate(problem, traj);
      bool pass = true;
      double margin = INFINITY;
      std::size_t collisions = 0;
      for (const auto& r : records) {
        pass = pass && r.pass;
        collisions += r.near_collision ? 1 : 0;
        if (r.rhs > 0.0) margin = std::min(margin, (r.rhs - r.lhs) / r.rhs);
      }
      return {{"operation", "ode-estimate"},
              {"inputs", problem.to_json()},
              {"relative_margin", number_to_json(margin)},
              {"near_collisions", collisions},
              {"pass", pass}};
    } catch (const StepSizeError& e) {
      if (++attempts > 4) throw;
      problem.grid = ode::uniform_grid(problem.grid.back(), e.suggested_steps());
    }
  }
}

}  // namespace

std::string to_string(CampaignOp op) {
  switch (op) {
    case CampaignOp::simplex: return "simplex";
    case CampaignOp::extended: return "extended";
    case CampaignOp::expansion: return "expansion";
    case CampaignOp::expansion_exact: return "expansion-exact";
    case CampaignOp::sum_identity: return "sum-identity";
    case CampaignOp::w_identity: return "w-identity";
    case CampaignOp::equality_family: return "equality-family";
    case CampaignOp::polygon: return "polygon";
    case CampaignOp::reduction: return "reduction";
    case CampaignOp::homogeneity: return "homogeneity";
    case CampaignOp::ode: return "ode";
  }
  return "?";
}

CampaignOp campaign_op_from_string(const std::string& name) {
  for (auto op : {CampaignOp::simplex, CampaignOp::extended, CampaignOp::expansion, CampaignOp::expansion_exact,
                  CampaignOp::sum_identity, CampaignOp::w_identity, CampaignOp::equality_family, CampaignOp::polygon,
                  CampaignOp::reduction, CampaignOp::homogeneity, CampaignOp::ode}) {
    if (to_string(op) == name) return op;
  }
  throw ArgumentError("unknown campaign op '" + name + "'");
}

double CampaignConfig::effective_tolerance() const {
  if (tolerance) return *tolerance;
  switch (op) {
    case CampaignOp::simplex:
    case CampaignOp::extended:
    case CampaignOp::polygon:
      return kInequalityTol;
    case CampaignOp::reduction:
      return 1e-12;
    case CampaignOp::ode:
      return ode::kEstimateTol;
    default:
      return 1e-10;
  }
}

json CampaignConfig::to_json() const {
  json j{{"op", vandermetric::to_string(op)}, {"seed", seed},  {"trials", trials},
         {"tolerance", effective_tolerance()},  {"n", n},     {"m", m}};
  if (op == CampaignOp::simplex) j["metric"] = vandermetric::to_json(metric);
  if (op == CampaignOp::equality_family) j["param_range"] = {param_lo, param_hi};
  return j;
}

TrialRecord run_trial(const CampaignConfig& config, std::size_t index) {
  TrialRecord rec;
  rec.index = index;
  rec.seed = derive_seed(config.seed, index);
  Rng rng(rec.seed);
  const double tol = config.effective_tolerance();
  const std::size_t n = config.n;
  const std::size_t m = config.m;

  switch (config.op) {
    case CampaignOp::simplex: {
      std::size_t dim = m;
      if (config.metric.kind == MetricKind::vandermonde || config.metric.kind == MetricKind::root) dim = 2;
      const double scale = rng.log_uniform(0.1, 10.0);
      const auto t = random_tuple(rng, config.metric.kind == MetricKind::euclidean3 ? 3 : n, dim, -scale, scale);
      const auto y = random_point(rng, dim, -1.5 * scale, 1.5 * scale);
      auto report = simplex_gap(t, y, config.metric, tol);
      report.seed = rec.seed;
      rec.report = to_json(report);
      break;
    }
    case CampaignOp::extended: {
      const auto t = random_tuple(rng, n, 2, -2.0, 2.0);
      const auto y = random_point(rng, 2, -3.0, 3.0);
      rec.report = extended_batch(t.to_complex(), Complex(y[0], y[1]), tol);
      break;
    }
    case CampaignOp::expansion:
      rec.report = expansion_check(random_tuple(rng, n, m, -1.0, 1.0), tol);
      break;
    case CampaignOp::expansion_exact: {
      std::vector<std::vector<long long>> points(n, std::vector<long long>(m));
      for (auto& p : points) {
        for (auto& c : p) c = rng.uniform_int(-10, 10);
      }
      rec.report = expansion_exact_check(points);
      break;
    }
    case CampaignOp::sum_identity: {
      const auto t = random_tuple(rng, n, m, -1.0, 1.0);
      rec.report = sum_identity_check(t, random_point(rng, m, -1.5, 1.5), tol);
      break;
    }
    case CampaignOp::w_identity: {
      const auto t = random_tuple(rng, n, m, -1.0, 1.0);
      rec.report = w_identity_batch(t, random_point(rng, m, -1.5, 1.5), tol);
      break;
    }
    case CampaignOp::equality_family: {
      const double q = rng.log_uniform(config.param_lo, config.param_hi);
      const double s = rng.log_uniform(config.param_lo, config.param_hi);
      rec.report = equality_family_check(q, s, tol);
      break;
    }
    case CampaignOp::polygon: {
      const auto tri = random_polygon(rng, 3);
      const auto quad = random_polygon(rng, 4);
      const auto k = static_cast<std::size_t>(rng.uniform_int(3, static_cast<long long>(std::max<std::size_t>(n, 3))));
      rec.report = polygon_batch(tri, quad, random_polygon(rng, k), tol);
      break;
    }
    case CampaignOp::reduction:
      rec.report = reduction_check(random_tuple(rng, n, 2, -1.0, 1.0), tol);
      break;
    case CampaignOp::homogeneity: {
      const auto planar = random_tuple(rng, n, 2, -1.0, 1.0);
      const Complex lambda = std::polar(rng.log_uniform(0.1, 10.0), rng.uniform(0.0, kTwoPi));
      const auto spatial = random_tuple(rng, n, std::max<std::size_t>(m, 2), -1.0, 1.0);
      const double real_lambda = rng.uniform(-3.0, 3.0);
      rec.report = homogeneity_check(planar, lambda, spatial, real_lambda, tol);
      break;
    }
    case CampaignOp::ode: {
      const auto dim = static_cast<std::size_t>(rng.uniform_int(2, 4));
      ode::ODEProblem problem;
      const auto a0 = random_matrix(rng, dim);
      const auto a1 = random_matrix(rng, dim);
      problem.coefficient = ode::CoefficientFunction::linear(a0, a1);
      for (auto& x : problem.initials) {
        x.resize(static_cast<Eigen::Index>(dim));
        for (Eigen::Index r = 0; r < x.size(); ++r) x(r) = rng.uniform(-1.0, 1.0);
      }
      problem.grid = ode::uniform_grid(2.0, 400);
      rec.report = ode_check(std::move(problem));
      break;
    }
  }
  rec.pass = rec.report.at("pass").get<bool>();
  rec.relative_gap = relative_of(rec.report, is_identity_op(config.op));
  return rec;
}

CampaignResult run_campaign(const CampaignConfig& config) {
  if (config.op == CampaignOp::simplex) {
    // Surface selector errors (e.g. euclidean3 with n != 3 adjusted above,
    // generalized with m < 2) before fanning out.
    if (config.metric.kind == MetricKind::generalized && config.m < 2) {
      throw ArgumentError("campaign: generalized metric needs m >= 2");
    }
  }
  if (config.n < 2) throw ArgumentError("campaign: n must be >= 2");
  if (config.m < 1) throw ArgumentError("campaign: m must be >= 1");
  if ((config.op == CampaignOp::expansion || config.op == CampaignOp::expansion_exact) && config.n > ml::kMaxExpansionN) {
    throw ResourceError("campaign: expansion limited to n <= " + std::to_string(ml::kMaxExpansionN));
  }
  if (config.op == CampaignOp::ode || config.op == CampaignOp::polygon || config.op == CampaignOp::reduction ||
      config.op == CampaignOp::extended || config.op == CampaignOp::homogeneity) {
    // no extra shape constraints
  } else if (config.m < 2 && config.op != CampaignOp::simplex && config.op != CampaignOp::equality_family) {
    throw ArgumentError("campaign: m must be >= 2 for multilinear ops");
  }

  auto records = run_trials(config.trials, config.workers, [&](std::size_t i) { return run_trial(config, i); });

  CampaignResult result;
  result.config = config;
  result.trials = config.trials;
  const bool identity = is_identity_op(config.op);
  result.worst_relative_gap = identity ? 0.0 : INFINITY;
  for (auto& r : records) {
    if (!r.pass) ++result.violations;
    result.worst_relative_gap = identity ? std::max(result.worst_relative_gap, r.relative_gap)
                                         : std::min(result.worst_relative_gap, r.relative_gap);
    if (config.emit_all || !r.pass) result.records.push_back(std::move(r));
  }
  return result;
}

json CampaignResult::summary_json() const {
  json j{{"config", config.to_json()},
         {"trials", trials},
         {"violations", violations},
         {"worst_relative_gap", number_to_json(worst_relative_gap)},
         {"pass", pass()}};
  return j;
}

json rerun(const json& report) {
  const auto op = report.at("operation").get<std::string>();
  if (report.contains("reports")) {
    std::vector<json> redone;
    for (const auto& r : report["reports"]) redone.push_back(rerun(r));
    return batch(op, std::move(redone));
  }
  const auto& in = report.at("inputs");
  const double tol = report.value("tolerance", kInequalityTol);
  if (op == "simplex") {
    auto r = simplex_gap(tuple_from_json(in.at("tuple")), in.at("y").get<std::vector<double>>(),
                         selector_from_json(in.at("metric")), tol);
    if (report.contains("seed")) r.seed = report["seed"].get<std::uint64_t>();
    return to_json(r);
  }
  if (op == "extended") {
    return to_json(extended_inequality_gap(complex_list(in.at("z")), complex_value(in.at("y")), in.at("k").get<int>(), tol));
  }
  if (op == "equality-gap-3") {
    return to_json(geometry::equality_gap_3(complex_value(in.at("y")), complex_value(in.at("z1")),
                                            complex_value(in.at("z2")), complex_value(in.at("z3")), tol));
  }
  if (op == "triangle") return to_json(geometry::triangle_check(geometry::polygon_from_json(in), tol));
  if (op == "quadrilateral") return to_json(geometry::quadrilateral_check(geometry::polygon_from_json(in), tol));
  if (op == "ngon") return to_json(geometry::ngon_check(geometry::polygon_from_json(in), tol));
  if (op == "ngon-simplex-equality") return ngon_equality_json(geometry::polygon_from_json(in), tol);
  if (op == "ptolemy") return ptolemy_check(geometry::polygon_from_json(in), tol);
  if (op == "expansion") return expansion_check(tuple_from_json(in.at("tuple")), tol);
  if (op == "expansion-exact") return expansion_exact_check(in.at("tuple").get<std::vector<std::vector<long long>>>());
  if (op == "sum-identity") {
    return sum_identity_check(tuple_from_json(in.at("tuple")), in.at("y").get<std::vector<double>>(), tol);
  }
  if (op == "w-identity") {
    return w_identity_check(tuple_from_json(in.at("tuple")), in.at("y").get<std::vector<double>>(),
                            in.at("q").get<std::size_t>(), tol);
  }
  if (op == "equality-family") return equality_family_check(in.at("q").get<double>(), in.at("s").get<double>(), tol);
  if (op == "reduction") return reduction_check(tuple_from_json(in.at("tuple")), tol);
  if (op == "homogeneity") {
    return homogeneity_check(tuple_from_json(in.at("planar")), complex_value(in.at("lambda")),
                             tuple_from_json(in.at("spatial")), in.at("real_lambda").get<double>(), tol);
  }
  if (op == "ode-estimate") return ode_check(ode::ODEProblem::from_json(in));
  throw ArgumentError("rerun: unsupported operation '" + op + "'");
}

}  // namespace vandermetric
