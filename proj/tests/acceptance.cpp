// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// pass.

#include <boost/rational.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "vandermetric/campaign.hpp"
#include "vandermetric/cli.hpp"
#include "vandermetric/core_metric.hpp"
#include "vandermetric/definiteness.hpp"
#include "vandermetric/geometry.hpp"
#include "vandermetric/multilinear.hpp"
#include "vandermetric/ode.hpp"
#include "vandermetric/random.hpp"

using namespace vandermetric;
namespace ml = vandermetric::multilinear;
namespace geo = vandermetric::geometry;
using C = std::complex<double>;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double since_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

unsigned workers() { return default_workers(); }

CampaignResult campaign(CampaignOp op, std::size_t n, std::size_t m, std::size_t trials, std::uint64_t seed,
                        MetricSelector metric = MetricSelector::of(MetricKind::vandermonde)) {
  CampaignConfig c;
  c.op = op;
  c.n = n;
  c.m = m;
  c.trials = trials;
  c.seed = seed;
  c.metric = std::move(metric);
  c.workers = workers();
  return run_campaign(c);
}

// --- criteria ----------------------------------------------------------------

Outcome tetrahedron() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto t = geo::tetrahedron_counterexample();
  const double ms = since_ms(t0);

  using Q = boost::rational<long long>;
  const Q dd(t.squared_distance_num, t.squared_distance_den);
  const Q lhs = dd * dd * dd;  // D^3, the product of six edges
  // (lhs / rhs)^2 with rhs = 4 D^(3/2): D^3 / 16; the claimed inequality
  // lhs <= rhs would need 2^5 <= 3^3
  const Q ratio = dd * dd * dd / Q(16);
  o.require(t.exact_geometry, "exact unit vectors with equal edges");
  o.require(dd == Q(8, 3), "squared edge 8/3");
  o.require(lhs == Q(512, 27), "lhs = 512/27");
  o.require(ratio == Q(32, 27) && ratio.numerator() == (1 << 5) && ratio.denominator() == 3 * 3 * 3,
            "lhs^2/rhs^2 = 2^5/3^3");
  o.require(ratio.numerator() > ratio.denominator(), "2^5 > 3^3");
  o.require(std::abs(t.pairwise.lhs - 512.0 / 27.0) <= 1e-12 * 512.0 / 27.0, "lhs value");
  o.require(std::abs(t.pairwise.rhs - 4.0 * std::pow(8.0 / 3.0, 1.5)) <= 1e-12 * t.pairwise.rhs, "rhs value");
  o.require(t.pairwise.lhs > t.pairwise.rhs && !t.pairwise.pass, "simplex inequality fails");
  o.require(ms < 1.0, "runtime < 1 ms");
  o.note("lhs=" + fmt(t.pairwise.lhs) + " rhs=" + fmt(t.pairwise.rhs) + " ratio^2=32/27 (" + fmt(ms) + " ms)");
  return o;
}

Outcome four_four() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto t = ml::counterexample_4_4();
  const auto spec = ml::spec_for(t);
  const auto form = ml::product_difference_form(spec, t);
  const double value = ml::generalized_metric(spec, t, MonotoneNorm::euclidean());
  const double ms = since_ms(t0);
  bool zero = true;
  for (double c : form) zero = zero && c == 0.0;
  const auto rows = t.rows();
  int nonzero = 0;
  std::vector<std::vector<long long>> pts;
  for (std::size_t i = 0; i < 4; ++i) {
    pts.emplace_back(rows[i].begin(), rows[i].end());
    for (std::size_t j = 0; j < i; ++j) nonzero += rows[i] != rows[j] ? 1 : 0;
  }
  o.require(value == 0.0 && zero, "metric exactly 0");
  o.require(ml::every_projection_killed(t), "every projection has a zero factor");
  o.require(nonzero == 6, "6 nonzero differences");
  o.require(ml::validate_witness(4, 4, pts), "exact integer check");
  o.require(ms < 1.0, "runtime < 1 ms");
  o.note("metric=0, " + std::to_string(nonzero) + "/6 differences nonzero (" + fmt(ms) + " ms)");
  return o;
}

Outcome definiteness() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::pair<std::size_t, std::uint64_t> definite[] = {{3, 27}, {4, 729}, {5, 59049}};
  for (const auto& [m, size] : definite) {
    const auto r = ml::definiteness_decide(3, m, size, workers());
    o.require(r.verdict == ml::Verdict::definite, "(3," + std::to_string(m) + ") definite");
    o.require(r.assignments_total == size && r.assignments_tried == size,
              "(3," + std::to_string(m) + ") enumerates " + std::to_string(size));
  }
  const auto r = ml::definiteness_decide(4, 4, 46656, workers());
  const double ms = since_ms(t0);
  o.require(r.verdict == ml::Verdict::counterexample, "(4,4) counterexample");
  o.require(r.assignments_total == 46656, "(4,4) space 6^6");
  o.require(ml::validate_witness(4, 4, r.witness), "(4,4) witness validated");
  o.require(ms < 10000.0, "runtime < 10 s");
  o.note("(3,3),(3,4),(3,5) definite after 27/729/59049; (4,4) witness at assignment " +
         std::to_string(r.assignments_tried) + " of 46656 (" + fmt(ms) + " ms)");
  return o;
}

Outcome expansion() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t exact_bad = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::size_t m = 2; m <= 4; ++m) {
      const auto r = campaign(CampaignOp::expansion, n, m, 1000, 100 + 10 * n + m);
      worst = std::max(worst, r.worst_relative_gap);
      o.require(r.pass(), "float (" + std::to_string(n) + "," + std::to_string(m) + ")");
      const auto e = campaign(CampaignOp::expansion_exact, n, m, 1000, 200 + 10 * n + m);
      exact_bad += e.violations;
    }
  }
  const double ms = since_ms(t0);
  o.require(worst <= 1e-10, "max relative gap <= 1e-10");
  o.require(exact_bad == 0, "exact integer gap = 0");
  o.require(ms < 60000.0, "runtime < 60 s");
  o.note("15 (n,m) x 1000 tuples, max relative gap " + fmt(worst) + ", exact mismatches " +
         std::to_string(exact_bad) + " (" + fmt(ms / 1000) + " s)");
  return o;
}

Outcome sum_and_w() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (std::size_t n : {3u, 4u}) {
    for (auto op : {CampaignOp::sum_identity, CampaignOp::w_identity}) {
      const auto r = campaign(op, n, 3, 10000, 300 + n);
      worst = std::max(worst, r.worst_relative_gap);
      o.require(r.pass(), to_string(op) + " n=" + std::to_string(n));
    }
  }
  const double ms = since_ms(t0);
  o.require(worst <= 1e-10, "gap <= 1e-10 scale");
  o.require(ms < 60000.0, "runtime < 60 s");
  o.note("(3,3),(4,3) x 10^4, W over q=1..n, max gap/scale " + fmt(worst) + " (" + fmt(ms / 1000) + " s)");
  return o;
}

Outcome simplex_campaigns() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t violations = 0, runs = 0;
  double worst = INFINITY;
  auto go = [&](MetricKind kind, std::size_t n, std::size_t m, std::uint64_t seed) {
    const auto r = campaign(CampaignOp::simplex, n, m, 100000, seed, MetricSelector::of(kind));
    violations += r.violations;
    worst = std::min(worst, r.worst_relative_gap);
    ++runs;
    o.require(r.pass(), to_string(kind) + " n=" + std::to_string(n) + " m=" + std::to_string(m));
  };
  for (std::size_t n = 3; n <= 6; ++n) go(MetricKind::vandermonde, n, 2, 400 + n);
  for (std::size_t m = 2; m <= 5; ++m) go(MetricKind::euclidean3, 3, m, 410 + m);
  for (std::size_t m = 3; m <= 5; ++m) go(MetricKind::generalized, 3, m, 420 + m);
  for (std::size_t n = 3; n <= 6; ++n) go(MetricKind::root, n, 2, 430 + n);
  const double ms = since_ms(t0);
  o.require(ms < 300000.0, "runtime < 5 min");
  o.note(std::to_string(runs) + " campaigns x 10^5, " + std::to_string(violations) +
         " violations, smallest relative gap " + fmt(worst) + " (" + fmt(ms / 1000) + " s)");
  return o;
}

Outcome extended() {
  Outcome o;
  const auto r = campaign(CampaignOp::extended, 4, 2, 10000, 500);
  o.require(r.pass(), "zero violations");
  o.note("n=4, k=0..3, 10^4 samples, " + std::to_string(r.violations) + " violations, smallest relative gap " +
         fmt(r.worst_relative_gap));
  return o;
}

Outcome equality_family() {
  Outcome o;
  const auto r = campaign(CampaignOp::equality_family, 3, 2, 1000, 600);
  o.require(r.pass(), "gap <= 1e-10 scale");
  const auto p = geo::equality_family(1.0, 2.0);
  const double pi = std::numbers::pi;
  const double d2 = std::abs(p.z2 - std::polar(1.0, 2 * pi / 3));
  const double d3 = std::abs(p.z3 - std::polar(1.0, -2 * pi / 3));
  o.require(p.z1 == C(1.0, 0.0) && d2 <= 1e-12 && d3 <= 1e-12, "(1,2) gives the third roots of unity");
  o.note("10^3 (q,s) in [0.01,100]^2, max |gap|/scale " + fmt(r.worst_relative_gap) + "; roots of unity to " +
         fmt(std::max(d2, d3)));
  return o;
}

Outcome polygons() {
  Outcome o;
  double worst_regular = 0.0;
  for (std::size_t n = 3; n <= 10; ++n) {
    const auto poly = geo::CyclicPolygon::regular(n, 1.0);
    const auto r = geo::simplex_equality_ngon(poly, 1e-10);
    worst_regular = std::max(worst_regular, std::abs(r.gap) / r.scale());
    o.require(std::abs(r.gap) <= 1e-10 * r.scale() && *r.equilateral, "regular " + std::to_string(n) + "-gon equality");
    if (n == 3) o.require(geo::triangle_check(poly, 1e-10).equality.value(), "equilateral triangle equality");
    if (n == 4) o.require(geo::quadrilateral_check(poly, 1e-10).equality.value(), "square equality");
  }
  std::size_t perturbed = 0;
  double smallest_strict = INFINITY;
  for (std::size_t n = 3; n <= 10; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      for (double delta : {1e-3, -1e-3}) {
        auto angles = geo::CyclicPolygon::regular(n, 1.0, 0.5).angles();
        angles[k] += delta;
        const geo::CyclicPolygon poly(1.0, angles);
        const auto r = geo::simplex_equality_ngon(poly);
        ++perturbed;
        smallest_strict = std::min(smallest_strict, r.gap / r.scale());
        o.require(r.is_strict() && !*r.equality && !*r.equilateral, "perturbed " + std::to_string(n) + "-gon strict");
        if (n == 3) o.require(geo::triangle_check(poly).is_strict(), "perturbed triangle strict");
        if (n == 4) {
          o.require(geo::quadrilateral_check(poly).is_strict(), "perturbed quadrilateral strict");
          o.require(geo::ptolemy_defect(poly) <= 1e-10, "Ptolemy on perturbed quadrilateral");
        }
      }
    }
  }
  const auto r = campaign(CampaignOp::polygon, 10, 2, 10000, 700);
  o.require(r.pass(), "random polygons: triangle, quadrilateral, n-gon, Ptolemy, flags");
  o.note("regular n=3..10 max |gap|/scale " + fmt(worst_regular) + "; " + std::to_string(perturbed) +
         " perturbations strict (min gap/scale " + fmt(smallest_strict) + "); 10^4 random polygons, " +
         std::to_string(r.violations) + " violations");
  return o;
}

Outcome reduction() {
  Outcome o;
  const auto a = campaign(CampaignOp::reduction, 3, 2, 5000, 800);
  const auto b = campaign(CampaignOp::reduction, 4, 2, 5000, 801);
  const double worst = std::max(a.worst_relative_gap, b.worst_relative_gap);
  o.require(a.pass() && b.pass() && worst <= 1e-12, "relative 1e-12");
  o.note("5000 triples + 5000 quadruples, max relative difference " + fmt(worst));
  return o;
}

Outcome ode_estimate() {
  Outcome o;
  const auto t0 = Clock::now();
  ode::ODEProblem p;
  p.coefficient = ode::CoefficientFunction::constant(-ode::Matrix::Identity(2, 2));
  p.initials = {ode::Vector::Zero(2), ode::Vector::Unit(2, 0), ode::Vector::Unit(2, 1)};
  p.grid = ode::uniform_grid(2.0, 200);
  double worst = 0.0;
  for (const auto& r : ode::verify_estimate(p)) {
    const double exact = std::exp(-3.0 * r.t) * std::sqrt(2.0);
    worst = std::max({worst, std::abs(r.lhs - exact), std::abs(r.rhs - exact)});
    o.require(r.pass, "A=-I estimate at t=" + fmt(r.t));
  }
  o.require(worst <= 1e-8, "A=-I closed form to 1e-8");

  const auto r = campaign(CampaignOp::ode, 3, 2, 1000, 900);
  o.require(r.pass(), "random problems satisfy the estimate");

  // observed order on two closed-form systems
  ode::IntegratorOptions raw;
  raw.max_relative_step_error = 0.0;
  const ode::Vector x0 = ode::Vector::Unit(2, 0) + 0.5 * ode::Vector::Unit(2, 1);
  ode::Matrix rot(2, 2);
  rot << 0, 3, -3, 0;
  auto error = [&](const ode::Matrix& a, std::size_t steps, bool rotation) {
    const auto grid = ode::uniform_grid(2.0, steps);
    const auto xs = ode::integrate_single(ode::CoefficientFunction::constant(a), x0, grid, raw);
    double e = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double t = grid[k];
      ode::Vector exact(2);
      if (rotation) {
        exact << std::cos(3 * t) * x0(0) + std::sin(3 * t) * x0(1), -std::sin(3 * t) * x0(0) + std::cos(3 * t) * x0(1);
      } else {
        exact = std::exp(-t) * x0;
      }
      e = std::max(e, (xs[k] - exact).norm());
    }
    return e;
  };
  double min_ratio = INFINITY;
  for (bool rotation : {true, false}) {
    const ode::Matrix a = rotation ? rot : ode::Matrix(-ode::Matrix::Identity(2, 2));
    double prev = error(a, 20, rotation);
    for (std::size_t steps : {40u, 80u, 160u}) {
      const double e = error(a, steps, rotation);
      min_ratio = std::min(min_ratio, prev / e);
      prev = e;
    }
  }
  o.require(min_ratio >= 12.0, "error ratio >= 12 per halving");
  const double ms = since_ms(t0);
  o.require(ms < 120000.0, "runtime < 2 min");
  o.note("A=-I max error " + fmt(worst) + "; 10^3 random problems, " + std::to_string(r.violations) +
         " violations; min error ratio per halving " + fmt(min_ratio) + " (observed order " +
         fmt(std::log2(min_ratio)) + ") (" + fmt(ms / 1000) + " s)");
  return o;
}

Outcome determinism() {
  Outcome o;
  std::size_t compared = 0;
  for (auto op : {CampaignOp::simplex, CampaignOp::extended, CampaignOp::w_identity, CampaignOp::polygon,
                  CampaignOp::equality_family, CampaignOp::ode}) {
    CampaignConfig c;
    c.op = op;
    c.n = 4;
    c.m = 3;
    c.trials = 500;
    c.seed = 1234;
    c.emit_all = true;
    auto dump = [&](unsigned w) {
      c.workers = w;
      const auto r = run_campaign(c);
      std::string s = r.summary_json().dump();
      for (const auto& t : r.records) s += '\n' + t.report.dump();
      return s;
    };
    const auto a = dump(1), b = dump(1), d = dump(4);
    o.require(a == b && a == d, to_string(op) + " byte-identical");
    ++compared;
  }
  auto cli = [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    run_cli(args, out, err);
    return out.str();
  };
  const std::vector<std::string> args{"campaign", "--op", "simplex", "--metric", "root", "--n", "4",
                                      "--trials", "2000", "--seed", "77", "--emit-all", "--format", "jsonl"};
  const auto first = cli(args);
  o.require(!first.empty() && first == cli(args), "CLI report stream byte-identical");
  o.note(std::to_string(compared) + " campaigns x 500 trials identical across reruns and 1/4 workers; CLI stream " +
         std::to_string(first.size()) + " bytes identical");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"tetrahedron counterexample", tetrahedron},
      {"n=m=4 definiteness counterexample", four_four},
      {"definiteness decider", definiteness},
      {"permutation expansion oracle", expansion},
      {"sum and W identities", sum_and_w},
      {"simplex inequality campaigns", simplex_campaigns},
      {"extended inequality", extended},
      {"three-point equality family", equality_family},
      {"cyclic polygon suite", polygons},
      {"m=2 reduction", reduction},
      {"ODE contraction estimate", ode_estimate},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s [%2zu] %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
