// Acceptance gate: one line per criterion, nonzero exit iff any fails.
// Every tolerance and grid is pinned here; nothing is configurable.

#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dgt/adversary.hpp"
#include "dgt/cache.hpp"
#include "dgt/heaps.hpp"
#include "dgt/scan.hpp"
#include "dgt/solver.hpp"
#include "dgt/strategy.hpp"

using namespace dgt;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
  std::printf("criterion %d: %s - %s%s%s\n", criterion, ok ? "PASS" : "FAIL", what.c_str(),
              detail.empty() ? "" : " | ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// --- 1: exact values from the source problems ------------------------------
void criterion1() {
  bool ok = true;
  std::string detail;

  int g24_1 = solve_value(24, 1, Rational(2, 11), 1);
  ok &= g24_1 == 7;
  detail += "g(24,1,2/11,1)=" + std::to_string(g24_1);

  int g10_4 = solve_value(10, 4, Rational(2, 5), 1);
  ok &= g10_4 == 3;
  detail += " g(10,4,2/5,1)=" + std::to_string(g10_4);

  // g(24,2,2/11,1) = 5 pinned without open-ended search:
  // info_lower gives >= 5, algorithm W's exhaustive worst case gives <= 5,
  // and a budget-5 solve independently confirms <= 5.
  bool lower = info_lower(24, 2) == 5;
  Instance inst(24, 2, Rational(2, 11), 1);
  auto algw = make_strategy("algw");
  auto rep = verify_strategy(*algw, inst);
  bool upper = rep.simulations == 276 && rep.correctness_ok && rep.worst_queries == 5;
  SolveOptions opt;
  opt.budget = 5;
  auto out = solve_exact(inst, opt);
  bool solver_upper = out.exact() && out.value == 5;
  ok &= lower && upper && solver_upper;
  detail += " g(24,2,2/11,1): info_lower=5:" + std::string(lower ? "yes" : "no") +
            " algw_worst(276 sims)=" + std::to_string(rep.worst_queries) +
            " budget5=" + (solver_upper ? std::string("exact 5") : std::string("not confirmed"));

  report(1, "exact values g(24,1)=7, g(10,4)=3, g(24,2)=5", ok, detail);
}

// --- 2: the integer-step counterexample ------------------------------------
void criterion2() {
  auto findings = scan_conjecture(Conjecture::IntegerStep, {24, 24, 1, 1, Rational(2, 11), 1});
  bool ok = findings.size() == 1 && findings[0].violated &&
            findings[0].detail.find("g(k)=7") != std::string::npos &&
            findings[0].detail.find("g(k+1)+1=6") != std::string::npos;
  report(2, "integer-step violation at alpha=2/11, n=24", ok,
         findings.empty() ? "no findings" : findings[0].detail);
}

// --- 3: optimality of the two-defective algorithm --------------------------
void criterion3() {
  bool ok = true;
  std::string detail;
  auto algw = make_strategy("algw");
  for (auto [num, den] : {std::pair<long long, long long>{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 5}, {2, 11}}) {
    Rational alpha(num, den);
    int a = floor_inv_alpha(alpha);
    int n_hi = 3 * a + delta_of(alpha) + pow2_ceil_log(a);
    for (int n = 3; n <= n_hi; ++n) {
      Instance inst(n, 2, alpha, 1);
      auto rep = verify_strategy(*algw, inst);
      bool here = rep.correctness_ok && rep.query_sizes_ok &&
                  rep.worst_queries == ceil_log2(n - 1) && rep.worst_queries == info_lower(n, 2);
      if (!here && ok) {
        ok = false;
        detail = "first failure at n=" + std::to_string(n) + " alpha=" + alpha.str() +
                 " worst=" + std::to_string(rep.worst_queries);
      }
    }
  }
  report(3, "algw worst case = ceil(log(n-1)) = info_lower over the full grid", ok, detail);
}

// --- 4: strategy soundness sweep -------------------------------------------
// Pinned grid: alpha in {1/2, 1/3, 2/5, 2/11}, n <= 18, every k,
// m in {1, min(2,k), k}; exhaustive hidden sets.
void criterion4(long long& refine_sims) {
  bool ok = true;
  std::string detail;
  long long sims = 0;
  for (auto& strat : all_strategies())
    for (auto [num, den] : {std::pair<long long, long long>{1, 2}, {1, 3}, {2, 5}, {2, 11}})
      for (int n = 1; n <= 18; ++n)
        for (int k = 1; k <= n; ++k) {
          std::set<int> ms = {1, std::min(2, k), k};
          for (int m : ms) {
            Instance inst(n, k, Rational(num, den), m);
            if (!strat->applicable(inst).ok) continue;
            auto rep = verify_strategy(*strat, inst);
            sims += rep.simulations;
            if (strat->name() == "partition-refine") refine_sims += rep.simulations;
            bool here = rep.correctness_ok && rep.bound_ok && rep.query_sizes_ok;
            if (!here && ok) {
              ok = false;
              detail = strat->name() + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                       " m=" + std::to_string(m) + " alpha=" + inst.alpha.str() + ": " +
                       (rep.failure.empty() ? "bound or size violation" : rep.failure);
            }
          }
        }
  report(4, "zero violations over the n <= 18 soundness grid", ok,
         detail.empty() ? std::to_string(sims) + " simulations" : detail);
}

// --- 5: the doubling boundary case -----------------------------------------
void criterion5() {
  Instance inst(24, 4, Rational(1, 3), 1);
  auto strat = make_strategy("doubling");
  bool applicable = strat->applicable(inst).ok;
  VerifyReport rep;
  if (applicable) rep = verify_strategy(*strat, inst);
  bool ok = applicable && rep.simulations == 10626 && rep.correctness_ok && rep.worst_queries <= 6;
  report(5, "doubling at alpha=1/3, n=24, k=4 stays within 6 questions", ok,
         "worst=" + std::to_string(rep.worst_queries) + " sims=" + std::to_string(rep.simulations));
}

// --- 6: heap selection properties ------------------------------------------
HeapConfig random_heap_config(int k, int l, int beta, int a, Rng& rng) {
  HeapConfig cfg{k, l, beta, a, {}};
  const int n = static_cast<int>(cfg.ground_size());
  std::vector<int> used(static_cast<std::size_t>(n), 0);
  int nsets = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * k * l + 4)));
  for (int s = 0; s < nsets; ++s) {
    ElementSet f(n);
    int want = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(beta * a)));
    for (int tries = 0; tries < 6 * want && f.size() < want; ++tries) {
      int e = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (used[static_cast<std::size_t>(e)] < l && !f.test(e)) {
        f.insert(e);
        ++used[static_cast<std::size_t>(e)];
      }
    }
    if (!f.empty()) cfg.family.push_back(f);
  }
  return cfg;
}

void disjoint_families(int n, int cap, const std::function<void(const std::vector<ElementSet>&)>& fn) {
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int e, int blocks) {
    if (e == n) {
      std::vector<ElementSet> fam(static_cast<std::size_t>(blocks), ElementSet(n));
      for (int i = 0; i < n; ++i)
        if (label[static_cast<std::size_t>(i)] > 0)
          fam[static_cast<std::size_t>(label[static_cast<std::size_t>(i)] - 1)].insert(i);
      for (const ElementSet& f : fam)
        if (f.size() > cap) return;
      fn(fam);
      return;
    }
    for (int b = 0; b <= blocks + 1 && b <= n; ++b) {
      label[static_cast<std::size_t>(e)] = b;
      rec(e + 1, std::max(blocks, b));
    }
    label[static_cast<std::size_t>(e)] = 0;
  };
  rec(0, 0);
}

void criterion6() {
  bool ok = true;
  std::string detail;
  Rng rng(2024);
  for (auto [k, l, beta] : {std::tuple<int, int, int>{1, 1, 1}, {1, 2, 1}, {2, 2, 2}})
    for (int a = 1; a <= 3; ++a)
      for (int trial = 0; trial < 100; ++trial) {
        HeapConfig cfg = random_heap_config(k, l, beta, a, rng);
        HeapResult res = select_heaps(cfg);
        auto viol = heap_violations(cfg.family, res.heaps, static_cast<long long>(beta) * a);
        if ((!viol.empty() || res.iterations > k * l - 1) && ok) {
          ok = false;
          detail = "random config k=" + std::to_string(k) + " l=" + std::to_string(l) +
                   " beta=" + std::to_string(beta) + " a=" + std::to_string(a) + " trial " +
                   std::to_string(trial) + (viol.empty() ? " too many iterations" : ": " + viol.front());
        }
      }
  long long families = 0;
  for (int a = 1; a <= 3 && ok; ++a)
    disjoint_families(3 * a, 2 * a, [&](const std::vector<ElementSet>& fam) {
      ++families;
      HeapResult res = select_heaps_k2_disjoint(a, fam);
      auto viol = heap_violations(fam, res.heaps, a);
      if (!viol.empty() && ok) {
        ok = false;
        detail = "disjoint family #" + std::to_string(families) + " a=" + std::to_string(a) + ": " +
                 viol.front();
      }
    });
  report(6, "heap postconditions on 900 random configs and all disjoint families (a <= 3)", ok,
         ok ? std::to_string(families) + " exhaustive families" : detail);
}

// --- 7: solver self-consistency --------------------------------------------
void criterion7() {
  bool ok = true;
  std::string detail;
  for (auto [num, den] : {std::pair<long long, long long>{1, 2}, {1, 3}, {2, 5}})
    for (int n = 1; n <= 7; ++n)
      for (int k = 1; k <= std::min(n, 3); ++k)
        for (int m = 1; m <= k; ++m) {
          SolveOptions with, without;
          without.symmetry = false;
          int g_sym = solve_value(n, k, Rational(num, den), m, with);
          int g_raw = solve_value(n, k, Rational(num, den), m, without);
          if (g_sym != g_raw && ok) {
            ok = false;
            detail = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " m=" +
                     std::to_string(m) + " alpha=" + Rational(num, den).str() + ": " +
                     std::to_string(g_sym) + " vs " + std::to_string(g_raw);
          }
        }

  // Sandwich invariant on every cached record: write a batch, reload with
  // verification on, and assert explicitly.
  const std::string path = "/tmp/dgt_acceptance_cache.jsonl";
  std::remove(path.c_str());
  std::vector<Instance> batch = {Instance(24, 1, Rational(2, 11), 1),
                                 Instance(24, 2, Rational(2, 11), 1),
                                 Instance(10, 4, Rational(2, 5), 1),
                                 Instance(8, 2, Rational(1, 3), 1),
                                 Instance(9, 3, Rational(1, 2), 2)};
  try {
    for (const Instance& inst : batch) append_cache(path, ExactSolver(inst).record());
    for (const SolveRecord& rec : load_cache(path)) {
      Instance inst(rec.n, rec.k, Rational(rec.alpha_num, rec.alpha_den), rec.m, rec.semantics);
      if (!(info_lower(rec.n, rec.k) <= rec.g && rec.g <= best_strategy_bound(inst))) {
        ok = false;
        detail = "sandwich violated for n=" + std::to_string(rec.n);
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  std::remove(path.c_str());
  report(7, "symmetry on/off agreement (n <= 7) and sandwich on cached records", ok, detail);
}

// --- 8: property substitutes for the asymptotic constants ------------------
void criterion8(long long refine_sims) {
  bool ok = true;
  std::string detail;

  // Weight adversary bookkeeping on simulated runs.
  Rng rng(77);
  for (int trial = 0; trial < 40 && ok; ++trial) {
    int n = 20 + static_cast<int>(rng.below(30));
    int k = 1 + static_cast<int>(rng.below(3));
    Rational alpha(1 + static_cast<long long>(rng.below(2)), 7 + static_cast<long long>(rng.below(6)));
    Instance inst(n, k, alpha, 1);
    WeightAdversary adv(inst, 2LL * inst.a());
    long long asked = 0;
    while (!adv.phase_over()) {
      int sz = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_useful_query_size(inst))));
      if (!adv.answer(random_subset(rng, n, sz))) break;
      ++asked;
    }
    if (adv.total_weight() > Rational(asked * inst.a(), 1)) {
      ok = false;
      detail = "total weight above r*a at trial " + std::to_string(trial);
    }
    for (int e = 0; e < n && ok; ++e)
      if (adv.live_set().test(e) && adv.weight_of(e) >= Rational(1, 1)) {
        ok = false;
        detail = "unevicted element of weight >= 1 at trial " + std::to_string(trial);
      }
    auto obs = observation_checks(adv, 1000 + trial, 20);
    if (!obs.all_ok()) {
      ok = false;
      detail = "observation check failed at trial " + std::to_string(trial) + ": " + obs.witness;
    }
  }

  // The matching upper-bound strategy was verified on the criterion-4 grid;
  // its claimed bound there is exactly ceil(n/a) + m ceil(log a) + k.
  if (refine_sims <= 0) {
    ok = false;
    detail = "partition-refine missing from the soundness sweep";
  }
  Instance probe(24, 2, Rational(2, 11), 1);
  if (make_strategy("partition-refine")->claimed_bound(probe) !=
      static_cast<int>(ceil_div(24, 5)) + 1 * ceil_log2(5) + 2) {
    ok = false;
    detail = "partition-refine bound is not the advertised closed form";
  }

  report(8, "weight bookkeeping invariants and the explicit refine count", ok,
         ok ? std::to_string(refine_sims) + " refine simulations covered by criterion 4" : detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  long long refine_sims = 0;
  criterion4(refine_sims);
  criterion5();
  criterion6();
  criterion7();
  criterion8(refine_sims);
  std::printf("%s\n", failures == 0 ? "all criteria passed" : "FAILURES PRESENT");
  return failures == 0 ? 0 : 1;
}
