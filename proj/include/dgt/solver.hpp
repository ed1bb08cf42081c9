#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <climits>
#include <cstring>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dgt/bounds.hpp"
#include "dgt/core.hpp"

namespace dgt {

inline constexpr const char* kSolverVersion = "1";

struct SolveOptions {
  bool symmetry = true;
  std::optional<int> budget;
  long long enum_cap = kDefaultEnumerationCap;
};

struct SolveRecord {
  int n;
  int k;
  long long alpha_num;
  long long alpha_den;
  int m;
  Semantics semantics;
  int g;
  std::string solver_version;
  double elapsed_seconds = 0.0;  // informational; not part of the cache format
};

struct SolveOutcome {
  enum class Status { Exact, ExceedsBudget } status;
  int value;  // Exact: g itself.  ExceedsBudget: the exhausted budget (g > value).

  bool exact() const { return status == Status::Exact; }
};

/// Exact minimax value of the game: the questioner minimizes depth, the
/// answer player maximizes, a state is over once m elements are certified.
/// Exactly-k semantics; the state is the family of surviving hypotheses.
class ExactSolver {
 public:
  explicit ExactSolver(Instance inst, SolveOptions opt = {})
      : inst_(std::move(inst)), opt_(opt), max_query_(max_useful_query_size(inst_)) {
    if (inst_.semantics != Semantics::ExactlyK)
      throw std::invalid_argument("ExactSolver: requires exactly-k semantics");
    if (binomial(inst_.n, inst_.k) > opt_.enum_cap)
      throw EnumerationCapExceeded("instance too large to enumerate: C(" +
                                   std::to_string(inst_.n) + "," + std::to_string(inst_.k) +
                                   ") exceeds cap");
    if (!opt_.symmetry && inst_.n > 22)
      throw EnumerationCapExceeded("n too large to search without symmetry reduction");
    for_each_k_subset(inst_.n, inst_.k, [&](const ElementSet& s) { root_.push_back(s); });
  }

  SolveOutcome run() {
    int b = std::max(info_lower(inst_.n, inst_.k), quick_lower_bound(root_));
    // Guaranteed finite: the partition-refine count is an upper bound.
    int ceiling = static_cast<int>(ceil_div(inst_.n, inst_.a())) + inst_.m * ceil_log2(inst_.a()) +
                  inst_.k + 1;
    for (;; ++b) {
      if (opt_.budget && b > *opt_.budget)
        return {SolveOutcome::Status::ExceedsBudget, *opt_.budget};
      if (value_le(root_, b)) return {SolveOutcome::Status::Exact, b};
      if (b > ceiling) throw std::logic_error("ExactSolver: search exceeded the proven upper bound");
    }
  }

  SolveRecord record() {
    auto t0 = std::chrono::steady_clock::now();
    SolveOutcome out = run();
    if (!out.exact()) throw std::runtime_error("ExactSolver: budget exhausted before an exact value");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {inst_.n, inst_.k, inst_.alpha.num(), inst_.alpha.den(),
            inst_.m, inst_.semantics, out.value, kSolverVersion, secs};
  }

  /// Representatives of all first questions achieving the minimax value.
  std::vector<ElementSet> optimal_first_moves() {
    SolveOutcome out = run();
    if (!out.exact()) throw std::runtime_error("optimal_first_moves: budget too small");
    std::vector<ElementSet> best;
    for (const ElementSet& q : generate_moves(root_)) {
      auto [yes, no] = split(root_, q);
      if (yes.empty() || no.empty()) continue;
      if (value_le(yes, out.value - 1) && value_le(no, out.value - 1)) best.push_back(q);
    }
    return best;
  }

  long long nodes_visited() const { return nodes_; }

 private:
  using Family = std::vector<ElementSet>;

  bool terminal(const Family& fam) const {
    ElementSet acc = fam.front();
    for (std::size_t i = 1; i < fam.size() && acc.size() >= inst_.m; ++i) acc = acc & fam[i];
    return acc.size() >= inst_.m;
  }

  std::pair<Family, Family> split(const Family& fam, const ElementSet& q) const {
    Family yes, no;
    for (const ElementSet& d : fam)
      (oracle_answer(q, d, inst_.alpha) == Answer::Yes ? yes : no).push_back(d);
    return {std::move(yes), std::move(no)};
  }

  // Cheap admissible lower bounds on the minimax value.
  int quick_lower_bound(const Family& fam) const {
    if (terminal(fam)) return 0;
    // Pairwise disjoint hypotheses need pairwise distinct outputs.
    ElementSet used(inst_.n);
    long long disjoint = 0;
    for (const ElementSet& d : fam)
      if (!d.intersects(used)) {
        used = used | d;
        ++disjoint;
      }
    int lb = std::max(1, ceil_log2(std::max(1LL, disjoint)));
    // When every k-subset of the support survives, the distinct-outputs
    // argument pins the transversal size exactly.
    ElementSet support(inst_.n);
    for (const ElementSet& d : fam) support = support | d;
    long long u = support.size();
    if (static_cast<long long>(fam.size()) == binomial(static_cast<int>(u), inst_.k))
      lb = std::max(lb, ceil_log2(std::max(1LL, ceil_div(u - inst_.k + 1, inst_.m))));
    return lb;
  }

  // --- symmetry ---------------------------------------------------------

  // Elements u, v are interchangeable when the transposition (u v) maps the
  // family onto itself; interchangeability classes carry full symmetric
  // groups, so queries can be restricted to "lowest elements per class".
  std::vector<ElementSet> element_classes(const Family& fam) const {
    std::vector<int> degree(static_cast<std::size_t>(inst_.n), 0);
    for (const ElementSet& d : fam)
      for (int e : d.elements()) ++degree[static_cast<std::size_t>(e)];

    std::vector<int> parent(static_cast<std::size_t>(inst_.n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };

    std::unordered_map<ElementSet, bool, ElementSetHash> member;
    member.reserve(fam.size() * 2);
    for (const ElementSet& d : fam) member.emplace(d, true);
    auto swap_fixes = [&](int u, int v) {
      for (const ElementSet& d : fam)
        if (d.test(u) != d.test(v) && !member.count(d.swapped(u, v))) return false;
      return true;
    };

    for (int u = 0; u < inst_.n; ++u)
      for (int v = u + 1; v < inst_.n; ++v) {
        if (degree[static_cast<std::size_t>(u)] != degree[static_cast<std::size_t>(v)]) continue;
        if (find(u) == find(v)) continue;
        if (swap_fixes(u, v)) parent[static_cast<std::size_t>(find(v))] = find(u);
      }

    std::unordered_map<int, ElementSet> buckets;
    for (int e = 0; e < inst_.n; ++e) {
      auto [it, fresh] = buckets.try_emplace(find(e), inst_.n);
      it->second.insert(e);
    }
    std::vector<ElementSet> classes;
    classes.reserve(buckets.size());
    for (auto& [root, s] : buckets) classes.push_back(std::move(s));
    std::sort(classes.begin(), classes.end(),
              [](const ElementSet& x, const ElementSet& y) { return x.lowest() < y.lowest(); });
    return classes;
  }

  std::vector<ElementSet> generate_moves(const Family& fam) const {
    std::vector<ElementSet> moves;
    if (!opt_.symmetry) {
      if (inst_.n > 22) throw std::logic_error("move enumeration without symmetry needs small n");
      for (std::uint32_t mask = 1; mask < (1u << inst_.n); ++mask) {
        if (std::popcount(mask) > max_query_) continue;
        ElementSet q(inst_.n);
        for (int e = 0; e < inst_.n; ++e)
          if (mask & (1u << e)) q.insert(e);
        moves.push_back(q);
      }
      return moves;
    }
    std::vector<ElementSet> classes = element_classes(fam);
    std::vector<int> counts(classes.size(), 0);
    gen_counts(classes, counts, 0, 0, moves);
    return moves;
  }

  void gen_counts(const std::vector<ElementSet>& classes, std::vector<int>& counts, std::size_t i,
                  int total, std::vector<ElementSet>& out) const {
    if (i == classes.size()) {
      if (total == 0) return;
      ElementSet q(inst_.n);
      for (std::size_t j = 0; j < classes.size(); ++j)
        if (counts[j] > 0) q = q | classes[j].take_lowest(counts[j]);
      out.push_back(q);
      return;
    }
    int cap = std::min(classes[i].size(), max_query_ - total);
    for (int c = 0; c <= cap; ++c) {
      counts[i] = c;
      gen_counts(classes, counts, i + 1, total + c, out);
    }
    counts[i] = 0;
  }

  // --- memoization ------------------------------------------------------

  // Canonical-ish key: relabel elements by descending hypothesis-degree
  // (a family isomorphism), then serialize the sorted masks.  Correctness
  // never depends on how much the relabeling collapses; only sharing does.
  std::string key_of(const Family& fam) const {
    Family canon;
    if (opt_.symmetry) {
      std::vector<int> degree(static_cast<std::size_t>(inst_.n), 0);
      for (const ElementSet& d : fam)
        for (int e : d.elements()) ++degree[static_cast<std::size_t>(e)];
      std::vector<int> order(static_cast<std::size_t>(inst_.n));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return degree[static_cast<std::size_t>(x)] > degree[static_cast<std::size_t>(y)];
      });
      std::vector<int> perm(static_cast<std::size_t>(inst_.n));
      for (int pos = 0; pos < inst_.n; ++pos)
        perm[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos;
      canon.reserve(fam.size());
      for (const ElementSet& d : fam) canon.push_back(d.relabeled(perm));
      std::sort(canon.begin(), canon.end());
    } else {
      canon = fam;
      std::sort(canon.begin(), canon.end());
    }
    std::string s;
    s.reserve(canon.size() * canon.front().words().size() * 8);
    for (const ElementSet& d : canon)
      for (std::uint64_t w : d.words()) s.append(reinterpret_cast<const char*>(&w), 8);
    return s;
  }

  struct Entry {
    int lb = 0;
    int ub = INT_MAX;
  };

  // --- search -----------------------------------------------------------

  bool value_le(const Family& fam, int b) {
    ++nodes_;
    if (terminal(fam)) return true;
    if (b <= 0) return false;

    std::string key = key_of(fam);
    Entry& e = memo_[key];
    if (e.ub <= b) return true;
    if (e.lb > b) return false;

    int lb = quick_lower_bound(fam);
    if (lb > b) {
      e.lb = std::max(e.lb, lb);
      return false;
    }

    struct Move {
      Family yes, no;
      int score;
      int larger;
    };
    std::vector<Move> moves;
    for (const ElementSet& q : generate_moves(fam)) {
      auto [yes, no] = split(fam, q);
      if (yes.empty() || no.empty()) continue;  // forced answer: dominated
      int sy = quick_lower_bound(yes), sn = quick_lower_bound(no);
      if (std::max(sy, sn) > b - 1) continue;  // child already refuted
      int larger = static_cast<int>(std::max(yes.size(), no.size()));
      moves.push_back({std::move(yes), std::move(no), std::max(sy, sn), larger});
    }
    std::stable_sort(moves.begin(), moves.end(), [](const Move& x, const Move& y) {
      if (x.score != y.score) return x.score < y.score;
      return x.larger < y.larger;
    });
    for (Move& mv : moves) {
      // Refute the harder child first.
      Family& first = mv.yes.size() >= mv.no.size() ? mv.yes : mv.no;
      Family& second = mv.yes.size() >= mv.no.size() ? mv.no : mv.yes;
      if (!value_le(first, b - 1)) continue;
      if (!value_le(second, b - 1)) continue;
      Entry& e2 = memo_[key];  // reference may have been invalidated by rehash
      e2.ub = std::min(e2.ub, b);
      return true;
    }
    Entry& e3 = memo_[key];
    e3.lb = std::max(e3.lb, b + 1);
    return false;
  }

  Instance inst_;
  SolveOptions opt_;
  int max_query_;
  Family root_;
  std::unordered_map<std::string, Entry> memo_;
  long long nodes_ = 0;
};

/// One-call convenience wrapper.
inline SolveOutcome solve_exact(const Instance& inst, SolveOptions opt = {}) {
  ExactSolver solver(inst, opt);
  return solver.run();
}

inline int solve_value(int n, int k, const Rational& alpha, int m, SolveOptions opt = {}) {
  SolveOutcome out = solve_exact(Instance(n, k, alpha, m), opt);
  if (!out.exact()) throw std::runtime_error("solve_value: budget exhausted");
  return out.value;
}

}  // namespace dgt
