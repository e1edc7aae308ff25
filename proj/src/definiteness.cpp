#include "vandermetric/definiteness.hpp"

#include <atomic>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace vandermetric::multilinear {

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_power(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t r = 1;
  for (std::uint64_t k = 0; k < exponent; ++k) {
    if (base != 0 && r > kNone / base) return kNone;
    r *= base;
  }
  return r;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Assignment number `index` in lexicographic order: the first tau is the most
// significant digit, digit values index the point pairs lexicographically.
std::vector<PairIndex> decode(std::uint64_t index, const std::vector<PairIndex>& point_pairs, std::size_t taus) {
  std::vector<PairIndex> assignment(taus);
  const std::uint64_t base = point_pairs.size();
  for (std::size_t k = taus; k-- > 0;) {
    assignment[k] = point_pairs[index % base];
    index /= base;
  }
  return assignment;
}

}  // namespace

std::optional<std::vector<std::vector<long long>>> witness_for_assignment(std::size_t n, std::size_t m,
                                                                        const std::vector<PairIndex>& assignment) {
  const auto taus = enumerate_pairs(m);
  if (assignment.size() != taus.size()) throw ArgumentError("definiteness: assignment size mismatch");
  std::vector<UnionFind> classes(m, UnionFind(n));
  for (std::size_t k = 0; k < taus.size(); ++k) {
    const auto& killed = assignment[k];
    classes[taus[k].first].unite(killed.first, killed.second);
    classes[taus[k].second].unite(killed.first, killed.second);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j + 1; i < n; ++i) {
      bool separated = false;
      for (std::size_t r = 0; r < m && !separated; ++r) separated = classes[r].find(i) != classes[r].find(j);
      if (!separated) return std::nullopt;
    }
  }
  std::vector<std::vector<long long>> witness(n, std::vector<long long>(m, 0));
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<long long> label(n, -1);
    long long next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto root = classes[r].find(i);
      if (label[root] < 0) label[root] = next++;
      witness[i][r] = label[root];
    }
  }
  return witness;
}

bool validate_witness(std::size_t n, std::size_t m, const std::vector<std::vector<long long>>& witness) {
  if (witness.size() != n) return false;
  std::vector<ExactInt> coords;
  for (const auto& p : witness) {
    if (p.size() != m) return false;
    coords.insert(coords.end(), p.begin(), p.end());
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j + 1; i < n; ++i) {
      if (witness[i] == witness[j]) return false;
    }
  }
  const auto form = product_difference_form<ExactInt>({n, m, 0}, std::span<const ExactInt>(coords));
  return std::all_of(form.begin(), form.end(), [](ExactInt v) { return v == 0; });
}

DefinitenessResult definiteness_decide(std::size_t n, std::size_t m, std::uint64_t budget, unsigned workers) {
  if (n < 3) throw ArgumentError("definiteness: n must be >= 3");
  if (m < 2) throw ArgumentError("definiteness: m must be >= 2");
  const auto point_pairs = enumerate_pairs(n);
  const std::size_t taus = pair_count(m);

  DefinitenessResult result;
  result.n = n;
  result.m = m;
  result.assignments_total = saturating_power(point_pairs.size(), taus);
  const std::uint64_t limit = std::min(result.assignments_total, budget);

  std::atomic<std::uint64_t> first{kNone};
  auto scan = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t index = begin; index < end; ++index) {
      if (index >= first.load(std::memory_order_relaxed)) return;
      if (witness_for_assignment(n, m, decode(index, point_pairs, taus))) {
        std::uint64_t seen = first.load();
        while (index < seen && !first.compare_exchange_weak(seen, index)) {
        }
        return;
      }
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1 || limit < 1024) {
    scan(0, limit);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t block = (limit + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min(limit, w * block);
      const std::uint64_t end = std::min(limit, begin + block);
      pool.emplace_back(scan, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  const std::uint64_t found = first.load();
  if (found != kNone) {
    result.verdict = Verdict::counterexample;
    result.assignments_tried = found + 1;
    result.assignment = decode(found, point_pairs, taus);
    result.witness = *witness_for_assignment(n, m, result.assignment);
  } else {
    result.assignments_tried = limit;
    result.verdict = limit == result.assignments_total ? Verdict::definite : Verdict::exhausted;
  }
  return result;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::definite: return "definite";
    case Verdict::counterexample: return "counterexample";
    case Verdict::exhausted: return "exhausted";
  }
  return "?";
}

nlohmann::json to_json(const DefinitenessResult& r) {
  nlohmann::json j{{"n", r.n},
                   {"m", r.m},
                   {"verdict", to_string(r.verdict)},
                   {"assignments_tried", r.assignments_tried},
                   {"assignments_total", r.assignments_total}};
  if (r.verdict == Verdict::counterexample) {
    // witness_matrix follows the displayed convention: columns are points.
    std::vector<std::vector<long long>> matrix(r.m, std::vector<long long>(r.n));
    for (std::size_t i = 0; i < r.n; ++i) {
      for (std::size_t c = 0; c < r.m; ++c) matrix[c][i] = r.witness[i][c];
    }
    j["witness_matrix"] = matrix;
    j["witness_points"] = r.witness;
    nlohmann::json assignment = nlohmann::json::array();
    const auto taus = enumerate_pairs(r.m);
    for (std::size_t k = 0; k < taus.size(); ++k) {
      assignment.push_back({{"tau", {taus[k].first + 1, taus[k].second + 1}},
                            {"pair", {r.assignment[k].first + 1, r.assignment[k].second + 1}}});
    }
    j["assignment"] = assignment;
  }
  return j;
}

std::string witness_csv(const DefinitenessResult& r) {
  std::ostringstream out;
  for (const auto& p : r.witness) {
    for (std::size_t c = 0; c < p.size(); ++c) out << (c ? "," : "") << p[c];
    out << '\n';
  }
  return out.str();
}

}  // namespace vandermetric::multilinear
