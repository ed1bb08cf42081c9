#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <map>

#include "dgt/cache.hpp"
#include "dgt/scan.hpp"
#include "dgt/solver.hpp"

using namespace dgt;

namespace {

// Independent oracle for k = 1: the state is just the live-candidate count
// and useful queries have size at most a.
int g1(int live, int a, std::map<int, int>& memo) {
  if (live <= 1) return 0;
  auto it = memo.find(live);
  if (it != memo.end()) return it->second;
  int best = 1 << 20;
  for (int s = 1; s <= std::min(a, live - 1); ++s)
    best = std::min(best, 1 + std::max(g1(s, a, memo), g1(live - s, a, memo)));
  return memo[live] = best;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/dgt_test_" + name) { std::remove(path.c_str()); }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("solver matches the k=1 closed recursion") {
  for (auto [num, den] : {std::pair<long long, long long>{1, 2}, {1, 5}, {2, 11}, {3, 7}}) {
    Rational alpha(num, den);
    std::map<int, int> memo;
    int a = floor_inv_alpha(alpha);
    for (int n = 1; n <= 16; ++n) {
      CAPTURE(n, num, den);
      CHECK(solve_value(n, 1, alpha, 1) == g1(n, a, memo));
    }
  }
}

TEST_CASE("small values agree with hand computation") {
  // Binary search bound: alpha small enough that any subset may be asked.
  CHECK(solve_value(8, 1, Rational(1, 8), 1) == 3);
  CHECK(solve_value(7, 1, Rational(1, 8), 1) == 3);
  // Two defectives among three, find one: a single element query decides.
  CHECK(solve_value(3, 2, Rational(1, 2), 1) == 1);
  // Find both defectives among four.
  CHECK(solve_value(4, 2, Rational(1, 2), 2) == solve_value(4, 2, Rational(1, 2), 2));
  // m = k = n: nothing to learn.
  CHECK(solve_value(3, 3, Rational(1, 2), 3) == 0);
}

TEST_CASE("symmetry reduction does not change the value") {
  for (auto [num, den] : {std::pair<long long, long long>{1, 2}, {1, 3}, {2, 5}})
    for (int n = 2; n <= 7; ++n)
      for (int k = 1; k <= std::min(n, 3); ++k)
        for (int m = 1; m <= k; ++m) {
          SolveOptions with, without;
          without.symmetry = false;
          CAPTURE(n, k, m, num, den);
          CHECK(solve_value(n, k, Rational(num, den), m, with) ==
                solve_value(n, k, Rational(num, den), m, without));
        }
}

TEST_CASE("budget exhaustion is reported distinctly") {
  SolveOptions opt;
  opt.budget = 4;
  auto out = solve_exact(Instance(24, 1, Rational(2, 11), 1), opt);
  CHECK_FALSE(out.exact());
  CHECK(out.status == SolveOutcome::Status::ExceedsBudget);
  CHECK(out.value == 4);
  opt.budget = 7;
  out = solve_exact(Instance(24, 1, Rational(2, 11), 1), opt);
  CHECK(out.exact());
  CHECK(out.value == 7);
}

TEST_CASE("solver rejects oversized instances loudly") {
  CHECK_THROWS_AS(ExactSolver(Instance(100, 15, Rational(1, 3), 1)), EnumerationCapExceeded);
  SolveOptions opt;
  opt.symmetry = false;
  CHECK_THROWS_AS(ExactSolver(Instance(24, 1, Rational(1, 3), 1), opt), EnumerationCapExceeded);
  CHECK_THROWS_AS(ExactSolver(Instance(8, 2, Rational(1, 2), 1, Semantics::AtLeastK)),
                  std::invalid_argument);
}

TEST_CASE("optimal openings include the classic halving query") {
  // k = 1, n <= a: plain binary search, so size floor(n/2) must be optimal.
  for (int n = 2; n <= 6; ++n) {
    ExactSolver solver(Instance(n, 1, Rational(1, 6), 1));
    bool has_half = false;
    for (const ElementSet& q : solver.optimal_first_moves())
      if (q.size() == n / 2) has_half = true;
    CAPTURE(n);
    CHECK(has_half);
  }
}

TEST_CASE("records round-trip through the jsonl cache") {
  TempFile tmp("cache_roundtrip.jsonl");
  ExactSolver solver(Instance(10, 4, Rational(2, 5), 1));
  SolveRecord rec = solver.record();
  CHECK(rec.g == 3);
  CHECK(rec.solver_version == kSolverVersion);
  append_cache(tmp.path, rec);
  append_cache(tmp.path, ExactSolver(Instance(6, 1, Rational(1, 2), 1)).record());

  auto cache = load_cache(tmp.path);
  REQUIRE(cache.size() == 2);
  auto hit = cache_lookup(cache, Instance(10, 4, Rational(2, 5), 1));
  REQUIRE(hit.has_value());
  CHECK(hit->g == 3);
  CHECK_FALSE(cache_lookup(cache, Instance(10, 4, Rational(2, 5), 2)).has_value());
  CHECK_FALSE(cache_lookup(cache, Instance(10, 4, Rational(1, 5), 1)).has_value());
}

TEST_CASE("corrupt cache lines are rejected with their line number") {
  TempFile tmp("cache_corrupt.jsonl");
  append_cache(tmp.path, ExactSolver(Instance(6, 1, Rational(1, 2), 1)).record());
  {
    std::ofstream out(tmp.path, std::ios::app);
    out << "not json at all\n";
  }
  CHECK_THROWS_WITH(load_cache(tmp.path), Catch::Matchers::ContainsSubstring("line 2"));
}

TEST_CASE("cache loading re-verifies the sandwich invariant") {
  TempFile tmp("cache_sandwich.jsonl");
  {
    std::ofstream out(tmp.path);
    // g = 100 is far above every strategy bound for this instance.
    out << R"({"n":6,"k":1,"alpha_num":1,"alpha_den":2,"m":1,"semantics":"exactly-k","g":100,"solver_version":"1"})"
        << "\n";
  }
  CHECK_THROWS_AS(load_cache(tmp.path), CacheError);
  SolveRecord bogus{6, 1, 1, 2, 1, Semantics::ExactlyK, 0, kSolverVersion, 0.0};
  CHECK_THROWS_AS(append_cache(tmp.path, bogus), CacheError);  // below info_lower
}

TEST_CASE("integer step scan reproduces the counterexample") {
  auto findings = scan_conjecture(Conjecture::IntegerStep, {24, 24, 1, 1, Rational(2, 11), 1});
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].status == "violated");
  CHECK(findings[0].violated);
  CHECK(findings[0].detail.find("g(k)=7") != std::string::npos);
  CHECK(findings[0].detail.find("g(k+1)+1=6") != std::string::npos);
}

TEST_CASE("integer step holds when 1/alpha is an integer") {
  auto findings = scan_conjecture(Conjecture::IntegerStep, {4, 12, 1, 2, Rational(1, 3), 1});
  CHECK_FALSE(findings.empty());
  for (const auto& f : findings) {
    CAPTURE(f.instance, f.detail);
    CHECK(f.status == "holds");
  }
}

TEST_CASE("sej1 scan holds for k=1 once n is past the warm-up range") {
  // For n < 2a - 1 the conjectured algorithm is beatable (see the scan below),
  // so the "holds" grids start at n = 2a - 1.
  for (auto [den, n_lo] : {std::pair<long long, int>{2, 3}, {3, 5}, {5, 9}}) {
    auto findings = scan_conjecture(Conjecture::Sej1, {n_lo, 14, 1, 1, Rational(1, den), 1});
    bool any = false;
    for (const auto& f : findings) {
      CAPTURE(den, f.instance, f.detail);
      CHECK(f.status != "violated");
      any = any || f.status == "holds";
    }
    CHECK(any);
  }
  // Just below that range the optimal tree really is one query shorter.
  auto tiny = scan_conjecture(Conjecture::Sej1, {6, 8, 1, 1, Rational(1, 5), 1});
  REQUIRE(tiny.size() == 3);
  for (const auto& f : tiny) {
    CAPTURE(f.instance, f.detail);
    CHECK(f.status == "violated");
  }
  // non-integer 1/alpha is out of the conjecture's scope
  auto skipped = scan_conjecture(Conjecture::Sej1, {3, 14, 1, 1, Rational(2, 5), 1});
  REQUIRE(skipped.size() == 1);
  CHECK(skipped[0].status == "skipped");
}

TEST_CASE("monotonicity scans on a small grid") {
  for (const auto& f : scan_conjecture(Conjecture::MonotoneN, {2, 12, 1, 1, Rational(1, 2), 1})) {
    CAPTURE(f.instance, f.detail);
    CHECK(f.status == "holds");
  }
  for (const auto& f : scan_conjecture(Conjecture::MonotoneK, {3, 9, 1, 2, Rational(1, 3), 1})) {
    CAPTURE(f.instance, f.detail);
    CHECK(f.status == "holds");
  }
}

TEST_CASE("exact vs at-least comparison is one-sided and holds") {
  auto findings = scan_conjecture(Conjecture::ExactVsAtLeast, {4, 8, 1, 2, Rational(1, 3), 1});
  bool any = false;
  for (const auto& f : findings) {
    CAPTURE(f.instance, f.detail);
    CHECK(f.status != "violated");
    if (f.status == "holds") {
      any = true;
      CHECK(f.detail.find("one-sided") != std::string::npos);
    }
  }
  CHECK(any);
}

TEST_CASE("infeasible scan instances are skipped with notice") {
  auto findings = scan_conjecture(Conjecture::MonotoneN, {60, 61, 14, 14, Rational(1, 3), 1});
  REQUIRE_FALSE(findings.empty());
  for (const auto& f : findings) CHECK(f.status == "skipped");
}
