#include "vandermetric/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/logger.h>
#include <spdlog/sinks/ostream_sink.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "vandermetric/campaign.hpp"
#include "vandermetric/core_metric.hpp"
#include "vandermetric/definiteness.hpp"
#include "vandermetric/errors.hpp"
#include "vandermetric/geometry.hpp"
#include "vandermetric/io.hpp"
#include "vandermetric/multilinear.hpp"
#include "vandermetric/ode.hpp"
#include "vandermetric/random.hpp"
#include "vandermetric/selector.hpp"

namespace vandermetric {

using nlohmann::json;
namespace ml = multilinear;
using namespace io;
using ml::Verdict;
using ml::definiteness_decide;
using ml::validate_witness;

namespace {

struct Options {
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  std::optional<double> tol;
  std::size_t n = 3;
  std::size_t m = 2;
  double p = 2.0;
  double q = 1.0;
  double s = 2.0;
  std::string input;
  std::string output;
  std::string format = "json";
  std::string metric = "vandermonde";
  std::string y;
  int k = -1;
  std::string op = "simplex";
  std::string range = "0.01,100";
  unsigned workers = 0;
  bool emit_all = false;
  bool search = false;
  bool emit_csv = false;
  std::string witness_csv;
  std::uint64_t budget = 100'000'000;
  double radius = 1.0;
  double perturb = 0.0;
  std::string which;
};

class Emitter {
 public:
  explicit Emitter(std::string format) : format_(std::move(format)) {}
  const std::string& format() const { return format_; }

  void report(const json& j) {
    if (format_ == "json") {
      buf_ << j.dump(2) << '\n';
    } else if (format_ == "jsonl") {
      buf_ << j.dump() << '\n';
    } else {
      csv_row(j);
    }
  }
  void line(const std::string& s) { buf_ << s << '\n'; }

  void flush(const std::string& path, std::ostream& out) const {
    if (path.empty()) {
      out << buf_.str();
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot open output file '" + path + "'");
    f << buf_.str();
  }

 private:
  static std::string cell(const json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
  }
  void csv_row(const json& j) {
    if (!header_) {
      buf_ << "operation,lhs,rhs,gap,pass\n";
      header_ = true;
    }
    buf_ << cell(j.value("operation", json())) << ',' << cell(j.value("lhs", json())) << ','
         << cell(j.value("rhs", json())) << ',' << cell(j.value("gap", json())) << ','
         << cell(j.value("pass", json())) << '\n';
  }

  std::string format_;
  std::ostringstream buf_;
  bool header_ = false;
};

spdlog::level::level_enum log_level_from_env() {
  const char* v = std::getenv("VANDERMETRIC_LOG");
  if (v == nullptr || *v == '\0') return spdlog::level::warn;
  return spdlog::level::from_str(v);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string require_input(const Options& o) {
  if (o.input.empty()) throw ArgumentError("--input is required");
  return o.input;
}

PointTuple load_tuple(const std::string& path) {
  if (ends_with(path, ".json")) return tuple_from_json(json::parse(read_file(path)));
  return read_csv_points_file(path);
}

/// One JSON document, a JSON array, or JSON lines.
std::vector<json> load_json_documents(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<json> docs;
  try {
    auto j = json::parse(text);
    if (j.is_array()) {
      for (auto& e : j) docs.push_back(std::move(e));
    } else {
      docs.push_back(std::move(j));
    }
    return docs;
  } catch (const json::parse_error&) {
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    docs.push_back(json::parse(line));
  }
  return docs;
}

MetricSelector selector_for(const Options& o, std::size_t dim) {
  MonotoneNorm norm(o.p, std::vector<double>(std::max<std::size_t>(dim, 1), 1.0));
  const auto kind = metric_kind_from_string(o.metric);
  if (kind == MetricKind::product) throw ArgumentError("product metrics are only available through JSON selectors");
  if (kind == MetricKind::generalized) norm = MonotoneNorm(o.p);
  return MetricSelector::of(kind, norm);
}

std::vector<double> parse_point(const std::string& text, const char* flag) {
  if (text.empty()) throw ArgumentError(std::string(flag) + " is required");
  return parse_number_list(text);
}

bool report_passes(const json& j) { return j.value("pass", false); }

// --- subcommands ------------------------------------------------------------

int cmd_eval(const Options& o, Emitter& emit) {
  const auto path = require_input(o);
  const bool json_input = ends_with(path, ".json") || ends_with(path, ".jsonl");
  if (json_input) {
    std::vector<json> docs;
    for (auto& d : load_json_documents(path)) {
      // Campaign summaries carry their failing trials under "records".
      if (d.contains("records")) {
        for (auto& r : d["records"]) docs.push_back(std::move(r));
      } else if (d.contains("operation") || d.contains("report")) {
        docs.push_back(std::move(d));
      }
    }
    if (!docs.empty()) {
      bool all = true;
      for (const auto& d : docs) {
        const json& original = d.contains("report") ? d["report"] : d;
        auto redone = rerun(original);
        const bool reproduced = redone == original;
        all = all && report_passes(redone);
        redone["reproduced"] = reproduced;
        emit.report(redone);
      }
      return all ? 0 : 1;
    }
  }
  const auto t = load_tuple(path);
  const auto sel = selector_for(o, t.dimension());
  const double value = evaluate(sel, t);
  emit.report({{"operation", "eval"},
               {"inputs", {{"metric", to_json(sel)}, {"tuple", to_json(t)}}},
               {"value", number_to_json(value)},
               {"pass", true}});
  return 0;
}

int cmd_simplex(const Options& o, Emitter& emit) {
  const auto t = load_tuple(require_input(o));
  const auto y = parse_point(o.y, "--y");
  const auto r = simplex_gap(t, y, selector_for(o, t.dimension()), o.tol.value_or(kInequalityTol));
  emit.report(to_json(r));
  return r.pass ? 0 : 1;
}

int cmd_extended(const Options& o, Emitter& emit) {
  const auto t = load_tuple(require_input(o));
  const auto z = t.to_complex();
  const auto yv = parse_point(o.y, "--y");
  if (yv.size() != 2) throw ArgumentError("--y must be 're,im'");
  const Complex y(yv[0], yv[1]);
  const double tol = o.tol.value_or(kInequalityTol);
  bool all = true;
  const int n = static_cast<int>(z.size());
  if (o.k >= n) throw ArgumentError("--k must be in [0, n-1]");
  for (int k = o.k < 0 ? 0 : o.k; k < (o.k < 0 ? n : o.k + 1); ++k) {
    const auto r = extended_inequality_gap(z, y, k, tol);
    all = all && r.pass;
    emit.report(to_json(r));
  }
  return all ? 0 : 1;
}

int cmd_equality_family(const Options& o, Emitter& emit, spdlog::logger& log) {
  if (o.search) {
    const auto findings = geometry::search_equality_cases(o.seed, o.trials);
    std::size_t converged = 0;
    std::size_t matched = 0;
    for (const auto& f : findings) {
      json quad = json::array();
      for (const auto& z : f.quadruple) quad.push_back({z.real(), z.imag()});
      converged += f.converged ? 1 : 0;
      matched += f.converged && f.match.matched ? 1 : 0;
      json j{{"operation", "equality-search"},
             {"seed", f.seed},
             {"quadruple", quad},
             {"relative_gap", f.relative_gap},
             {"converged", f.converged},
             {"matched", f.match.matched}};
      if (f.match.matched) j["family"] = {{"q", f.match.q}, {"s", f.match.s}, {"order", f.match.order}};
      emit.report(j);
    }
    log.info("equality search: {} trials, {} converged, {} matched the family", findings.size(), converged, matched);
    return 0;
  }
  const auto p = geometry::equality_family(o.q, o.s);
  const auto r = geometry::equality_gap_3(p.y, p.z1, p.z2, p.z3, o.tol.value_or(1e-10));
  auto j = to_json(r);
  j["family"] = {{"q", o.q}, {"s", o.s}};
  j["pass"] = std::abs(r.gap) <= r.tolerance * r.scale();
  emit.report(j);
  return j["pass"].get<bool>() ? 0 : 1;
}

std::vector<geometry::CyclicPolygon> load_polygons(const Options& o) {
  std::vector<geometry::CyclicPolygon> polys;
  if (!o.input.empty()) {
    for (const auto& d : load_json_documents(o.input)) polys.push_back(geometry::polygon_from_json(d));
    return polys;
  }
  auto poly = geometry::CyclicPolygon::regular(o.n, o.radius);
  if (o.perturb != 0.0) {
    Rng rng(o.seed);
    auto angles = poly.angles();
    for (std::size_t k = 1; k < angles.size(); ++k) angles[k] += rng.uniform(-o.perturb, o.perturb);
    poly = geometry::CyclicPolygon(o.radius, angles, poly.center());
  }
  polys.push_back(poly);
  return polys;
}

int cmd_polygon(const Options& o, Emitter& emit) {
  const double tol = o.tol.value_or(kInequalityTol);
  bool all = true;
  if (o.emit_csv) emit.line("check,n,R,lhs,rhs,gap,equality");
  for (const auto& poly : load_polygons(o)) {
    std::vector<MetricReport> reports;
    const std::string which = o.which.empty() ? "all" : o.which;
    if ((which == "all" && poly.size() == 3) || which == "triangle") reports.push_back(geometry::triangle_check(poly, tol));
    if ((which == "all" && poly.size() == 4) || which == "quadrilateral") {
      reports.push_back(geometry::quadrilateral_check(poly, tol));
    }
    if (which == "all" || which == "ngon") reports.push_back(geometry::ngon_check(poly, tol));
    if (which == "all" || which == "simplex-equality") reports.push_back(geometry::simplex_equality_ngon(poly, tol));
    if (reports.empty()) throw ArgumentError("--check '" + which + "' does not apply to a " + std::to_string(poly.size()) + "-gon");
    for (const auto& r : reports) {
      all = all && r.pass;
      if (o.emit_csv) {
        emit.line(r.operation + ',' + std::to_string(poly.size()) + ',' + format_double(poly.radius()) + ',' +
                  format_double(r.lhs) + ',' + format_double(r.rhs) + ',' + format_double(r.gap) + ',' +
                  (r.equality.value_or(false) ? "true" : "false"));
      } else {
        emit.report(to_json(r));
      }
    }
    if (poly.size() == 4 && !o.emit_csv) {
      const double defect = geometry::ptolemy_defect(poly);
      emit.report({{"operation", "ptolemy"}, {"inputs", geometry::to_json(poly)}, {"relative_gap", defect},
                   {"tolerance", 1e-10}, {"pass", defect <= 1e-10}});
      all = all && defect <= 1e-10;
    }
  }
  return all ? 0 : 1;
}

json campaign_record_json(const TrialRecord& r) {
  return {{"index", r.index}, {"seed", r.seed}, {"pass", r.pass}, {"relative_gap", number_to_json(r.relative_gap)},
          {"report", r.report}};
}

void emit_campaign(const CampaignResult& res, Emitter& emit) {
  if (emit.format() == "csv") {
    emit.line("index,seed,pass,relative_gap");
    for (const auto& r : res.records) {
      emit.line(std::to_string(r.index) + ',' + std::to_string(r.seed) + ',' + (r.pass ? "true" : "false") + ',' +
                format_double(r.relative_gap));
    }
    return;
  }
  if (emit.format() == "jsonl") {
    for (const auto& r : res.records) emit.report(campaign_record_json(r));
    emit.report(res.summary_json());
    return;
  }
  auto j = res.summary_json();
  j["records"] = json::array();
  for (const auto& r : res.records) j["records"].push_back(campaign_record_json(r));
  emit.report(j);
}

CampaignConfig campaign_config(const Options& o, CampaignOp op) {
  CampaignConfig c;
  c.op = op;
  c.seed = o.seed;
  c.trials = o.trials;
  c.tolerance = o.tol;
  c.n = o.n;
  c.m = o.m;
  c.workers = o.workers == 0 ? default_workers() : o.workers;
  c.emit_all = o.emit_all;
  if (op == CampaignOp::simplex) {
    const auto kind = metric_kind_from_string(o.metric);
    std::size_t dim = o.m;
    if (kind == MetricKind::vandermonde || kind == MetricKind::root) dim = 2;
    c.metric = selector_for(o, dim);
  }
  const auto range = parse_number_list(o.range);
  if (range.size() != 2 || !(range[0] > 0.0) || !(range[1] >= range[0])) {
    throw ArgumentError("--range must be 'lo,hi' with 0 < lo <= hi");
  }
  c.param_lo = range[0];
  c.param_hi = range[1];
  return c;
}

int cmd_campaign(const Options& o, Emitter& emit, spdlog::logger& log) {
  const auto res = run_campaign(campaign_config(o, campaign_op_from_string(o.op)));
  log.info("campaign {}: {} trials, {} violations", o.op, res.trials, res.violations);
  emit_campaign(res, emit);
  return res.pass() ? 0 : 1;
}

int cmd_multilinear_verify(const Options& o, Emitter& emit, spdlog::logger& log) {
  if (!o.input.empty()) {
    const auto t = load_tuple(o.input);
    const std::vector<double> y = o.y.empty() ? std::vector<double>(t.dimension(), 0.0) : parse_number_list(o.y);
    const double tol = o.tol.value_or(1e-10);
    const json tj = to_json(t);
    std::vector<json> checks;
    if (t.size() <= ml::kMaxExpansionN) checks.push_back({{"operation", "expansion"}, {"inputs", {{"tuple", tj}}}, {"tolerance", tol}});
    checks.push_back({{"operation", "sum-identity"}, {"inputs", {{"tuple", tj}, {"y", y}}}, {"tolerance", tol}});
    for (std::size_t q = 1; q <= t.size(); ++q) {
      checks.push_back({{"operation", "w-identity"}, {"inputs", {{"tuple", tj}, {"y", y}, {"q", q}}}, {"tolerance", tol}});
    }
    bool all = true;
    for (const auto& c : checks) {
      const auto r = rerun(c);
      all = all && report_passes(r);
      emit.report(r);
    }
    return all ? 0 : 1;
  }
  bool all = true;
  for (auto op : {CampaignOp::expansion, CampaignOp::expansion_exact, CampaignOp::sum_identity, CampaignOp::w_identity}) {
    if ((op == CampaignOp::expansion || op == CampaignOp::expansion_exact) && o.n > ml::kMaxExpansionN) {
      log.warn("skipping {}: n > {}", to_string(op), ml::kMaxExpansionN);
      continue;
    }
    const auto res = run_campaign(campaign_config(o, op));
    all = all && res.pass();
    auto j = res.summary_json();
    j["records"] = json::array();
    for (const auto& r : res.records) j["records"].push_back(campaign_record_json(r));
    emit.report(j);
  }
  return all ? 0 : 1;
}

int cmd_definiteness(const Options& o, Emitter& emit, spdlog::logger& log) {
  const auto res = definiteness_decide(o.n, o.m, o.budget, o.workers == 0 ? default_workers() : o.workers);
  auto j = to_json(res);
  bool ok = true;
  if (res.verdict == Verdict::counterexample) {
    ok = validate_witness(res.n, res.m, res.witness);
    j["witness_validated"] = ok;
    if (!o.witness_csv.empty()) {
      std::ofstream f(o.witness_csv, std::ios::binary);
      if (!f) throw ArgumentError("cannot open '" + o.witness_csv + "'");
      f << ml::witness_csv(res);
    }
  }
  log.info("definiteness ({}, {}): {} after {} assignments", o.n, o.m, to_string(res.verdict), res.assignments_tried);
  emit.report(j);
  return ok ? 0 : 1;
}

json report_with(const MetricReport& r) { return to_json(r); }

int cmd_counterexample(const Options& o, Emitter& emit) {
  if (o.which == "tetrahedron") {
    const auto t = geometry::tetrahedron_counterexample();
    const bool reproduced = t.exact_geometry && t.ratio_num > t.ratio_den && !t.pairwise.pass && t.pairwise.lhs > t.pairwise.rhs;
    emit.report({{"operation", "counterexample-tetrahedron"},
                 {"points", t.points},
                 {"distances", t.distances},
                 {"exact_geometry", t.exact_geometry},
                 {"squared_distance", std::to_string(t.squared_distance_num) + "/" + std::to_string(t.squared_distance_den)},
                 {"lhs", t.pairwise.lhs},
                 {"rhs", t.pairwise.rhs},
                 {"lhs_sq_over_rhs_sq", std::to_string(t.ratio_num) + "/" + std::to_string(t.ratio_den)},
                 {"pairwise", report_with(t.pairwise)},
                 {"pairwise_root", report_with(t.pairwise_root)},
                 {"reproduced", reproduced},
                 {"pass", reproduced}});
    return reproduced ? 0 : 1;
  }
  if (o.which == "four-four") {
    const auto t = ml::counterexample_4_4();
    const auto spec = ml::spec_for(t);
    const double value_euclid = ml::generalized_metric(spec, t, MonotoneNorm::euclidean());
    const double value_max = ml::generalized_metric(spec, t, MonotoneNorm::max_norm());
    std::vector<std::vector<long long>> pts;
    for (const auto& row : t.rows()) pts.emplace_back(row.begin(), row.end());
    json diffs = json::array();
    bool distinct = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j2 = i + 1; j2 < pts.size(); ++j2) {
        std::vector<long long> d(pts[i].size());
        for (std::size_t c = 0; c < d.size(); ++c) d[c] = pts[j2][c] - pts[i][c];
        distinct = distinct && std::any_of(d.begin(), d.end(), [](long long v) { return v != 0; });
        diffs.push_back(d);
      }
    }
    const bool exact_zero = validate_witness(4, 4, pts);
    const bool killed = ml::every_projection_killed(t);
    const bool reproduced = value_euclid == 0.0 && value_max == 0.0 && distinct && exact_zero && killed;
    emit.report({{"operation", "counterexample-four-four"},
                 {"points", pts},
                 {"differences", diffs},
                 {"generalized_metric", {{"euclidean", value_euclid}, {"max", value_max}}},
                 {"pairwise_distinct", distinct},
                 {"exact_zero", exact_zero},
                 {"every_projection_killed", killed},
                 {"reproduced", reproduced},
                 {"pass", reproduced}});
    return reproduced ? 0 : 1;
  }
  throw ArgumentError("counterexample must be 'tetrahedron' or 'four-four'");
}

ode::ODEProblem default_ode_problem() {
  ode::ODEProblem p;
  p.coefficient = ode::CoefficientFunction::constant(-ode::Matrix::Identity(2, 2));
  p.initials[0] = ode::Vector::Zero(2);
  p.initials[1] = ode::Vector::Unit(2, 0);
  p.initials[2] = ode::Vector::Unit(2, 1);
  p.grid = ode::uniform_grid(2.0, 200);
  return p;
}

int cmd_ode(const Options& o, Emitter& emit) {
  auto problem = o.input.empty() ? default_ode_problem() : ode::ODEProblem::from_json(json::parse(read_file(o.input)));
  const auto records = ode::verify_estimate(problem);
  bool all = true;
  if (emit.format() == "csv") emit.line("t,lhs,rhs,gap,pass,near_collision");
  for (const auto& r : records) {
    all = all && r.pass;
    if (emit.format() == "csv") {
      emit.line(format_double(r.t) + ',' + format_double(r.lhs) + ',' + format_double(r.rhs) + ',' +
                format_double(r.gap) + ',' + (r.pass ? "true" : "false") + ',' + (r.near_collision ? "true" : "false"));
    } else {
      emit.report(to_json(r));
    }
  }
  return all ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  spdlog::logger log("vandermetric", sink);
  log.set_pattern("[%l] %v");
  log.set_level(log_level_from_env());

  Options o;
  CLI::App app{"Vandermonde n-metric toolkit: metrics, identities, polygon inequalities, definiteness, ODE estimate.\n"
               "Exit status: 0 all checks pass, 1 a check failed, 2 usage or input error.\n"
               "Set VANDERMETRIC_LOG=trace|debug|info|warn|error|off for diagnostics on stderr."};
  app.require_subcommand(1);

  auto add_io = [&](CLI::App* sub, const std::string& default_format) {
    o.format = default_format;
    sub->add_option("--input", o.input, "input file (CSV points, or JSON)");
    sub->add_option("--output", o.output, "write the report stream here instead of stdout");
    sub->add_option("--format", o.format, "json | jsonl | csv")
        ->check(CLI::IsMember({"json", "jsonl", "csv"}))
        ->capture_default_str();
    sub->add_option("--tol", o.tol, "tolerance override");
  };
  auto add_random = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "campaign seed")->capture_default_str();
    sub->add_option("--trials", o.trials, "number of trials")->capture_default_str();
    sub->add_option("--workers", o.workers, "worker threads (0 = hardware concurrency)");
  };
  auto add_metric = [&](CLI::App* sub) {
    sub->add_option("--metric", o.metric,
                    "vandermonde | root | euclidean3 | pairwise | pairwise-root | componentwise | generalized")
        ->capture_default_str();
    sub->add_option("--p", o.p, "exponent of the monotone norm, p >= 1 (inf allowed)")->capture_default_str();
  };

  auto* eval = app.add_subcommand("eval", "evaluate a metric on a CSV tuple, or re-run JSON reports");
  add_io(eval, "json");
  add_metric(eval);

  auto* simplex = app.add_subcommand("simplex", "simplex inequality at a point y");
  add_io(simplex, "json");
  add_metric(simplex);
  simplex->add_option("--y", o.y, "comma-separated coordinates of y");

  auto* extended = app.add_subcommand("extended", "weighted inequality |y|^k d_V <= sum |z_i|^k d_V(z_i -> y)");
  add_io(extended, "jsonl");
  extended->add_option("--y", o.y, "'re,im'");
  extended->add_option("--k", o.k, "exponent; all k in [0, n-1] when omitted");

  auto* family = app.add_subcommand("equality-family", "three-point equality family, or a search for equality cases");
  add_io(family, "json");
  add_random(family);
  family->add_option("--q", o.q, "family parameter q > 0")->capture_default_str();
  family->add_option("--s", o.s, "family parameter s > 0")->capture_default_str();
  family->add_flag("--search", o.search, "numerical search for equality cases (uses --seed, --trials)");

  auto* polygon = app.add_subcommand("polygon", "cyclic polygon inequalities");
  add_io(polygon, "jsonl");
  polygon->add_option("--n", o.n, "vertex count of the regular polygon used without --input")->capture_default_str();
  polygon->add_option("--radius", o.radius, "circumradius without --input")->capture_default_str();
  polygon->add_option("--perturb", o.perturb, "uniform angle perturbation amplitude");
  polygon->add_option("--seed", o.seed, "seed for --perturb");
  polygon->add_option("--check", o.which, "triangle | quadrilateral | ngon | simplex-equality | all");
  polygon->add_flag("--emit-csv", o.emit_csv, "emit CSV rows (check, n, R, lhs, rhs, gap, equality)");

  auto* mlv = app.add_subcommand("multilinear-verify", "permutation expansion, sum and W identities");
  add_io(mlv, "jsonl");
  add_random(mlv);
  mlv->add_option("--n", o.n, "points per tuple")->capture_default_str();
  mlv->add_option("--m", o.m, "dimension")->capture_default_str();
  mlv->add_option("--y", o.y, "comma-separated y for --input checks (default origin)");

  auto* def = app.add_subcommand("definiteness", "decide whether the generalized form is definite");
  add_io(def, "json");
  def->add_option("--n", o.n, "points")->capture_default_str();
  def->add_option("--m", o.m, "dimension")->capture_default_str();
  def->add_option("--budget", o.budget, "maximum assignments to enumerate")->capture_default_str();
  def->add_option("--workers", o.workers, "worker threads (0 = hardware concurrency)");
  def->add_option("--witness-csv", o.witness_csv, "write the witness points as CSV");

  auto* cex = app.add_subcommand("counterexample", "reproduce a counterexample");
  add_io(cex, "json");
  cex->add_option("which", o.which, "tetrahedron | four-four")->required();

  auto* ode_cmd = app.add_subcommand("ode", "three-trajectory contraction estimate for x' = A(t) x");
  add_io(ode_cmd, "jsonl");

  auto* campaign = app.add_subcommand("campaign", "seeded property campaign");
  add_io(campaign, "json");
  add_random(campaign);
  add_metric(campaign);
  campaign->add_option("--op", o.op,
                       "simplex | extended | expansion | expansion-exact | sum-identity | w-identity | "
                       "equality-family | polygon | reduction | homogeneity | ode")
      ->capture_default_str();
  campaign->add_option("--n", o.n, "points per tuple (polygon: max vertex count)")->capture_default_str();
  campaign->add_option("--m", o.m, "dimension")->capture_default_str();
  campaign->add_option("--range", o.range, "log-uniform (q, s) range 'lo,hi' for equality-family")->capture_default_str();
  campaign->add_flag("--emit-all", o.emit_all, "emit every trial record, not only failures");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  // The default format is per subcommand; only the parsed one applies.
  CLI::App* chosen = app.get_subcommands().front();
  if (chosen->count("--format") == 0) {
    static const std::map<std::string, std::string> defaults{
        {"extended", "jsonl"}, {"polygon", "jsonl"}, {"multilinear-verify", "jsonl"}, {"ode", "jsonl"}};
    const auto it = defaults.find(chosen->get_name());
    o.format = it == defaults.end() ? "json" : it->second;
  }

  Emitter emit(o.format);
  try {
    int code = 0;
    const std::string name = chosen->get_name();
    log.debug("running {}", name);
    if (name == "eval") code = cmd_eval(o, emit);
    else if (name == "simplex") code = cmd_simplex(o, emit);
    else if (name == "extended") code = cmd_extended(o, emit);
    else if (name == "equality-family") code = cmd_equality_family(o, emit, log);
    else if (name == "polygon") code = cmd_polygon(o, emit);
    else if (name == "multilinear-verify") code = cmd_multilinear_verify(o, emit, log);
    else if (name == "definiteness") code = cmd_definiteness(o, emit, log);
    else if (name == "counterexample") code = cmd_counterexample(o, emit);
    else if (name == "ode") code = cmd_ode(o, emit);
    else code = cmd_campaign(o, emit, log);
    emit.flush(o.output, out);
    return code;
  } catch (const StepSizeError& e) {
    err << "error: " << e.what() << " (suggested steps: " << e.suggested_steps() << ")\n";
  } catch (const json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace vandermetric
