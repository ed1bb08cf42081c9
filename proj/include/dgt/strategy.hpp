#pragma once

#include <algorithm>
#include <future>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgt/bounds.hpp"
#include "dgt/core.hpp"
#include "dgt/rng.hpp"

namespace dgt {

struct Applicability {
  bool ok;
  std::string reason;  // which side condition fails, when !ok
};

namespace detail {
// Strategies are written as straight-line procedures that ask questions
// through a Dialogue.  The dialogue replays the recorded transcript and
// suspends (by throwing) at the first question or output that goes beyond
// it, which is exactly the strategy's next decision.  Recursion state is
// thereby recomputed from the transcript on every decide() call, so any
// transcript prefix can be replayed.
struct SuspendAsk {
  ElementSet query;
};
struct SuspendOutput {
  ElementSet found;
};

class Dialogue {
 public:
  explicit Dialogue(const Transcript& t) : t_(t) {}

  Answer ask(const ElementSet& q) {
    if (q.empty()) throw std::logic_error("strategy asked an empty query");
    if (pos_ < t_.entries.size()) {
      if (t_.entries[pos_].first != q)
        throw std::logic_error("transcript replay mismatch: not produced by this strategy");
      return t_.entries[pos_++].second;
    }
    throw SuspendAsk{q};
  }

  [[noreturn]] void output(const ElementSet& found) { throw SuspendOutput{found}; }

 private:
  const Transcript& t_;
  std::size_t pos_ = 0;
};

/// Classical binary search on a live set every subset of which we may ask
/// directly (all emitted queries have size <= a, where NO means clean).
/// Requires at least one defective in `live`.
inline int small_binary_search(Dialogue& d, ElementSet live) {
  while (live.size() > 1) {
    ElementSet half = live.take_lowest(live.size() / 2);
    if (d.ask(half) == Answer::Yes)
      live = half;
    else
      live = live - half;
  }
  return live.lowest();
}

/// Halving search relying on the defective-density invariant: if the live
/// set holds at least an alpha fraction of defectives, both answers keep
/// that invariant, and the final element is defective.  Queries may be
/// larger than a.
inline int density_halving_search(Dialogue& d, ElementSet live) {
  while (live.size() > 1) {
    ElementSet half = live.take_lowest(live.size() / 2);
    if (d.ask(half) == Answer::Yes)
      live = half;
    else
      live = live - half;
  }
  return live.lowest();
}

/// Partition-and-refine extraction: rounds of disjoint size-a questions,
/// one defective pulled out of each YES block by binary search, recursing
/// on the YES blocks minus the extracted elements until `need` defectives
/// are certified.
inline ElementSet partition_refine_extract(Dialogue& d, const ElementSet& start, int need, int a) {
  ElementSet found(start.universe());
  ElementSet live = start;
  while (need > 0) {
    std::vector<ElementSet> yes_blocks;
    ElementSet rest = live;
    while (static_cast<int>(yes_blocks.size()) < need && !rest.empty()) {
      ElementSet block = rest.take_lowest(std::min(a, rest.size()));
      rest = rest - block;
      if (d.ask(block) == Answer::Yes) yes_blocks.push_back(block);
    }
    if (yes_blocks.empty())
      throw InconsistentTranscript("partition-refine: no block answered yes although defectives remain");
    ElementSet next(start.universe());
    for (const ElementSet& block : yes_blocks) {
      int e = small_binary_search(d, block);
      found.insert(e);
      --need;
      ElementSet leftover = block;
      leftover.erase(e);
      next = next | leftover;
    }
    live = next;
  }
  return found;
}

}  // namespace detail

/// An adaptive questioner.  decide() is a pure function of the transcript.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string name() const = 0;
  virtual Applicability applicable(const Instance& inst) const = 0;
  virtual int claimed_bound(const Instance& inst) const = 0;

  StrategyDecision decide(const Transcript& t) const {
    Applicability ap = applicable(t.instance);
    if (!ap.ok) throw NotApplicable(name() + ": " + ap.reason);
    detail::Dialogue d(t);
    try {
      play(t.instance, d);
    } catch (const detail::SuspendAsk& s) {
      return StrategyDecision::ask(s.query);
    } catch (const detail::SuspendOutput& s) {
      return StrategyDecision::output(s.found);
    }
    throw std::logic_error(name() + ": procedure ended without an output");
  }

 protected:
  virtual void play(const Instance& inst, detail::Dialogue& d) const = 0;
};

// ---------------------------------------------------------------------------
// binary: halving search under the density invariant alpha <= k/n.
// ---------------------------------------------------------------------------
class BinaryHalving : public Strategy {
 public:
  std::string name() const override { return "binary"; }

  Applicability applicable(const Instance& inst) const override {
    if (inst.m != 1) return {false, "requires m = 1"};
    if (inst.alpha.num() * static_cast<long long>(inst.n) >
        inst.alpha.den() * static_cast<long long>(inst.k))
      return {false, "requires alpha <= k/n"};
    return {true, ""};
  }

  int claimed_bound(const Instance& inst) const override { return ceil_log2(inst.n); }

 protected:
  void play(const Instance& inst, detail::Dialogue& d) const override {
    int e = detail::density_halving_search(d, inst.ground_set());
    d.output(ElementSet(inst.n, {e}));
  }
};

// ---------------------------------------------------------------------------
// binary-multi: halve down to at most 2m/alpha live elements, then finish
// with partition-refine on the residual set.
// ---------------------------------------------------------------------------
class BinaryHalvingMulti : public Strategy {
 public:
  std::string name() const override { return "binary-multi"; }

  Applicability applicable(const Instance& inst) const override {
    if (inst.alpha.num() * static_cast<long long>(inst.n) >
        inst.alpha.den() * static_cast<long long>(inst.k))
      return {false, "requires alpha <= k/n"};
    return {true, ""};
  }

  int claimed_bound(const Instance& inst) const override {
    if (inst.m == 1) return ceil_log2(inst.n);
    auto [steps, residual] = halving_plan(inst);
    return steps + static_cast<int>(ceil_div(residual, inst.a())) + inst.m * ceil_log2(inst.a()) +
           inst.m;
  }

 protected:
  void play(const Instance& inst, detail::Dialogue& d) const override {
    if (inst.m == 1) {
      d.output(ElementSet(inst.n, {detail::density_halving_search(d, inst.ground_set())}));
    }
    ElementSet live = inst.ground_set();
    while (inst.alpha.num() * static_cast<long long>(live.size()) >
           2LL * inst.m * inst.alpha.den()) {
      ElementSet half = live.take_lowest(live.size() / 2);
      live = d.ask(half) == Answer::Yes ? half : live - half;
    }
    d.output(detail::partition_refine_extract(d, live, inst.m, inst.a()));
  }

 private:
  static std::pair<int, int> halving_plan(const Instance& inst) {
    int steps = 0, sz = inst.n;
    while (inst.alpha.num() * static_cast<long long>(sz) > 2LL * inst.m * inst.alpha.den()) {
      sz /= 2;
      ++steps;
    }
    return {steps, sz};
  }
};

// ---------------------------------------------------------------------------
// doubling: first query peels off n - 2^t*a elements, then a cascade of
// halving-sized questions; any YES finishes by density halving.
// ---------------------------------------------------------------------------
class DoublingT : public Strategy {
 public:
  std::string name() const override { return "doubling"; }

  Applicability applicable(const Instance& inst) const override {
    if (inst.m != 1) return {false, "requires m = 1"};
    if (!doubling_condition(inst.n, inst.k, inst.a()))
      return {false, "requires k >= n/a - floor(log(n/a)) - 1"};
    return {true, ""};
  }

  int claimed_bound(const Instance& inst) const override { return ceil_log2(inst.n) + 1; }

 protected:
  void play(const Instance& inst, detail::Dialogue& d) const override {
    const int a = inst.a();
    ElementSet live = inst.ground_set();
    if (inst.n <= 2 * a) {
      d.output(ElementSet(inst.n, {detail::small_binary_search(d, live)}));
    }
    int t = floor_log2(inst.n / a);
    int r = inst.n - (1 << t) * a;
    if (r > 0) {
      ElementSet first = live.take_lowest(r);
      if (d.ask(first) == Answer::Yes)
        d.output(ElementSet(inst.n, {detail::density_halving_search(d, first)}));
      cascade(inst, d, t, live - first);
    } else {
      // Exact power: open with three disjoint quarter-sized questions.
      int quarter = (1 << (t - 2)) * a;
      for (int i = 0; i < 3; ++i) {
        ElementSet block = live.take_lowest(quarter);
        live = live - block;
        if (d.ask(block) == Answer::Yes)
          d.output(ElementSet(inst.n, {detail::density_halving_search(d, block)}));
      }
      cascade(inst, d, t - 2, live);
    }
  }

 private:
  // live has 2^s * a elements and enough defectives for the recursion.
  static void cascade(const Instance& inst, detail::Dialogue& d, int s, ElementSet live) {
    const int a = inst.a();
    while (s > 1) {
      ElementSet half = live.take_lowest((1 << (s - 1)) * a);
      if (d.ask(half) == Answer::Yes)
        d.output(ElementSet(inst.n, {detail::density_halving_search(d, half)}));
      live = live - half;
      --s;
    }
    d.output(ElementSet(inst.n, {detail::small_binary_search(d, live)}));
  }
};

// ---------------------------------------------------------------------------
// m1-partition: one question of size ka, then disjoint size-a probes of its
// complement, finishing with binary search on the last <= 2a elements.
// ---------------------------------------------------------------------------
class M1Partition : public Strategy {
 public:
  std::string name() const override { return "m1-partition"; }

  Applicability applicable(const Instance& inst) const override {
    if (inst.m != 1) return {false, "requires m = 1"};
    if (!m1_partition_condition(inst.n, inst.k, inst.a()))
      return {false, "requires k + log k + 1 <= ceil(n/a)"};
    return {true, ""};
  }

  int claimed_bound(const Instance& inst) const override {
    return static_cast<int>(ceil_div(inst.n, inst.a())) - inst.k + ceil_log2(inst.a());
  }

 protected:
  void play(const Instance& inst, detail::Dialogue& d) const override {
    const int a = inst.a();
    ElementSet x = inst.ground_set().take_lowest(inst.k * a);
    if (d.ask(x) == Answer::Yes)
      d.output(ElementSet(inst.n, {detail::density_halving_search(d, x)}));
    ElementSet rest = inst.ground_set() - x;
    while (rest.size() > 2 * a) {
      ElementSet block = rest.take_lowest(a);
      if (d.ask(block) == Answer::Yes)
        d.output(ElementSet(inst.n, {detail::small_binary_search(d, block)}));
      rest = rest - block;
    }
    d.output(ElementSet(inst.n, {detail::small_binary_search(d, rest)}));
  }
};

// ---------------------------------------------------------------------------
// partition-refine: the universally applicable partition-and-refine scheme.
// ---------------------------------------------------------------------------
class PartitionRefine : public Strategy {
 public:
  std::string name() const override { return "partition-refine"; }

  Applicability applicable(const Instance&) const override { return {true, ""}; }

  int claimed_bound(const Instance& inst) const override {
    return static_cast<int>(ceil_div(inst.n, inst.a())) + inst.m * ceil_log2(inst.a()) + inst.k;
  }

 protected:
  void play(const Instance& inst, detail::Dialogue& d) const override {
    d.output(detail::partition_refine_extract(d, inst.ground_set(), inst.m, inst.a()));
  }
};

// ---------------------------------------------------------------------------
// linear: ask every block of the size-a partition, then probe the chosen
// YES blocks element by element.
// ---------------------------------------------------------------------------
class LinearPartition : public Strategy {
 public:
  std::string name() const override { return "linear"; }

  Applicability applicable(const Instance&) const override { return {true, ""}; }

  int claimed_bound(const Instance& inst) const override {
    return inst.n / inst.a() + inst.m * inst.a() + 1;
  }

 protected:
  void play(const Instance& inst, detail::Dialogue& d) const override {
    const int a = inst.a();
    ElementSet rest = inst.ground_set();
    std::vector<ElementSet> yes_blocks;
    while (!rest.empty()) {
      ElementSet block = rest.take_lowest(std::min(a, rest.size()));
      rest = rest - block;
      if (d.ask(block) == Answer::Yes) yes_blocks.push_back(block);
    }
    if (static_cast<int>(yes_blocks.size()) > inst.m) yes_blocks.resize(static_cast<std::size_t>(inst.m));
    ElementSet found(inst.n);
    for (const ElementSet& block : yes_blocks)
      for (int e : block.elements()) {
        if (found.size() == inst.m) break;
        if (d.ask(ElementSet(inst.n, {e})) == Answer::Yes) found.insert(e);
      }
    if (found.size() < inst.m)
      throw InconsistentTranscript("linear: fewer defectives surfaced than requested");
    d.output(found);
  }
};

// ---------------------------------------------------------------------------
// set-aside: put k-1 elements aside and binary search the remaining n-k+1.
// Meets the distinct-outputs lower bound when alpha <= 2/(n-k+1).
// ---------------------------------------------------------------------------
class SetAsideSearch : public Strategy {
 public:
  std::string name() const override { return "set-aside"; }

  Applicability applicable(const Instance& inst) const override {
    if (inst.m != 1) return {false, "requires m = 1"};
    if (inst.alpha.num() * static_cast<long long>(inst.n - inst.k + 1) > 2 * inst.alpha.den())
      return {false, "requires alpha <= 2/(n-k+1)"};
    return {true, ""};
  }

  int claimed_bound(const Instance& inst) const override {
    return ceil_log2(inst.n - inst.k + 1);
  }

 protected:
  void play(const Instance& inst, detail::Dialogue& d) const override {
    ElementSet live = inst.ground_set().take_lowest(inst.n - inst.k + 1);
    d.output(ElementSet(inst.n, {detail::small_binary_search(d, live)}));
  }
};

// ---------------------------------------------------------------------------
// algw: the exact two-defective algorithm.  Big questions (size in
// [a+1, 2a+delta]) test "both defectives inside"; small ones (size <= a)
// test "at least one inside".
// ---------------------------------------------------------------------------
class AlgorithmW : public Strategy {
 public:
  std::string name() const override { return "algw"; }

  Applicability applicable(const Instance& inst) const override {
    if (inst.k != 2) return {false, "requires k = 2"};
    if (inst.m != 1) return {false, "requires m = 1"};
    return {true, ""};
  }

  int claimed_bound(const Instance& inst) const override {
    const int a = inst.a(), delta = delta_of(inst.alpha), p = pow2_ceil_log(a);
    return cost(inst.n, a, delta, p);
  }

 protected:
  void play(const Instance& inst, detail::Dialogue& d) const override {
    const int a = inst.a();
    const int delta = delta_of(inst.alpha);
    const int p = pow2_ceil_log(a);
    // Invariant of the loop: both defectives lie in `live`.
    ElementSet live = inst.ground_set();
    while (true) {
      const int sz = live.size();
      if (sz <= p + 1) {
        d.output(ElementSet(inst.n, {both_inside_search(d, live)}));
      } else if (sz <= 2 * p + 1) {
        ElementSet big = live.take_lowest(p + 1);
        ElementSet next = d.ask(big) == Answer::Yes ? aside_lowest(big) : live - big;
        d.output(ElementSet(inst.n, {detail::small_binary_search(d, next)}));
      } else if (sz <= 3 * a + delta + p) {
        ElementSet big = live.take_lowest(2 * a + delta);
        ElementSet mid = d.ask(big) == Answer::Yes ? aside_lowest(big) : live - big;
        d.output(ElementSet(inst.n, {finish_mid(d, mid, a)}));
      } else {
        ElementSet probe = live.take_lowest(a);
        if (d.ask(probe) == Answer::Yes)
          d.output(ElementSet(inst.n, {detail::small_binary_search(d, probe)}));
        live = live - probe;  // probe certified clean; both defectives remain
      }
    }
  }

 private:
  static ElementSet aside_lowest(ElementSet s) {
    s.erase(s.lowest());
    return s;
  }

  // Both defectives inside: set one element aside and search the rest.
  static int both_inside_search(detail::Dialogue& d, ElementSet live) {
    if (live.size() == 1) return live.lowest();
    live.erase(live.highest());
    return detail::small_binary_search(d, live);
  }

  // At least one defective in mid (|mid| <= p + a): one size-a probe, then
  // binary search.
  static int finish_mid(detail::Dialogue& d, const ElementSet& mid, int a) {
    if (mid.size() <= a) return detail::small_binary_search(d, mid);
    ElementSet probe = mid.take_lowest(a);
    if (d.ask(probe) == Answer::Yes) return detail::small_binary_search(d, probe);
    return detail::small_binary_search(d, mid - probe);
  }

  static int log_or_zero(int x) { return x >= 2 ? ceil_log2(x) : 0; }

  static int cost(int sz, int a, int delta, int p) {
    if (sz <= 1) return 0;
    if (sz <= p + 1) return log_or_zero(sz - 1);
    if (sz <= 2 * p + 1) return 1 + std::max(log_or_zero(p), log_or_zero(sz - p - 1));
    if (sz <= 3 * a + delta + p)
      return 1 + std::max(mid_cost(2 * a + delta - 1, a), mid_cost(sz - 2 * a - delta, a));
    return 1 + std::max(log_or_zero(a), cost(sz - a, a, delta, p));
  }

  static int mid_cost(int mid, int a) {
    if (mid <= a) return log_or_zero(mid);
    return 1 + std::max(log_or_zero(a), log_or_zero(mid - a));
  }
};

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------
inline std::vector<std::unique_ptr<Strategy>> all_strategies() {
  std::vector<std::unique_ptr<Strategy>> v;
  v.push_back(std::make_unique<BinaryHalving>());
  v.push_back(std::make_unique<BinaryHalvingMulti>());
  v.push_back(std::make_unique<DoublingT>());
  v.push_back(std::make_unique<M1Partition>());
  v.push_back(std::make_unique<PartitionRefine>());
  v.push_back(std::make_unique<LinearPartition>());
  v.push_back(std::make_unique<SetAsideSearch>());
  v.push_back(std::make_unique<AlgorithmW>());
  return v;
}

inline std::unique_ptr<Strategy> make_strategy(const std::string& name) {
  for (auto& s : all_strategies())
    if (s->name() == name) return std::move(s);
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

// ---------------------------------------------------------------------------
// Simulation harness
// ---------------------------------------------------------------------------
struct VerifyMode {
  enum class Kind { Exhaustive, Hidden } kind = Kind::Exhaustive;
  std::uint64_t seed = 0;
  int samples = 200;

  static VerifyMode exhaustive() { return {}; }
  static VerifyMode hidden(std::uint64_t seed, int samples = 200) {
    return {Kind::Hidden, seed, samples};
  }
};

struct VerifyReport {
  long long simulations = 0;
  int worst_queries = 0;
  bool correctness_ok = true;
  bool bound_ok = true;
  bool query_sizes_ok = true;
  std::optional<ElementSet> failing_hidden;
  std::string failure;
};

/// Plays the strategy against one concrete hidden defective set.  Returns
/// the query count; fills `failure` on a violation.
inline int simulate_against_hidden(const Strategy& strat, const Instance& inst,
                                   const ElementSet& hidden, std::string& failure,
                                   bool& sizes_ok, Transcript* out_transcript = nullptr) {
  Transcript t(inst);
  const int max_size = max_useful_query_size(inst);
  const int guard = strat.claimed_bound(inst) + 64;
  while (true) {
    StrategyDecision dec = strat.decide(t);
    if (dec.is_output()) {
      if (dec.set.size() != inst.m)
        failure = "output has " + std::to_string(dec.set.size()) + " elements, expected " +
                  std::to_string(inst.m);
      else if (!dec.set.subset_of(hidden))
        failure = "output " + dec.set.str() + " not contained in hidden set " + hidden.str();
      if (out_transcript) *out_transcript = t;
      return static_cast<int>(t.size());
    }
    if (dec.set.size() > max_size) sizes_ok = false;
    t.record(dec.set, oracle_answer(dec.set, hidden, inst.alpha));
    if (static_cast<int>(t.size()) > guard) {
      failure = "runaway: exceeded claimed bound by 64 queries";
      if (out_transcript) *out_transcript = t;
      return static_cast<int>(t.size());
    }
  }
}

namespace detail {
inline std::vector<ElementSet> hidden_sets_for(const Instance& inst, const VerifyMode& mode,
                                               long long cap) {
  std::vector<ElementSet> hs;
  if (mode.kind == VerifyMode::Kind::Exhaustive) {
    long long total = 0;
    int hi = inst.semantics == Semantics::ExactlyK ? inst.k : inst.n;
    for (int j = inst.k; j <= hi; ++j) total += binomial(inst.n, j);
    if (total > cap)
      throw EnumerationCapExceeded("instance too large to enumerate hidden sets exhaustively");
    for (int j = inst.k; j <= hi; ++j)
      for_each_k_subset(inst.n, j, [&](const ElementSet& s) { hs.push_back(s); });
  } else {
    Rng rng(mode.seed);
    for (int i = 0; i < mode.samples; ++i) {
      int j = inst.semantics == Semantics::ExactlyK
                  ? inst.k
                  : inst.k + static_cast<int>(rng.below(static_cast<std::uint64_t>(inst.n - inst.k + 1)));
      hs.push_back(random_subset(rng, inst.n, j));
    }
  }
  return hs;
}
}  // namespace detail

inline VerifyReport verify_strategy(const Strategy& strat, const Instance& inst,
                                    const VerifyMode& mode = VerifyMode::exhaustive(),
                                    int jobs = 1, long long cap = kDefaultEnumerationCap) {
  Applicability ap = strat.applicable(inst);
  if (!ap.ok) throw NotApplicable(strat.name() + ": " + ap.reason);

  std::vector<ElementSet> hidden_sets = detail::hidden_sets_for(inst, mode, cap);
  const int bound = strat.claimed_bound(inst);

  auto run_chunk = [&](std::size_t lo, std::size_t hi) {
    VerifyReport r;
    for (std::size_t i = lo; i < hi; ++i) {
      std::string failure;
      bool sizes_ok = true;
      int q = simulate_against_hidden(strat, inst, hidden_sets[i], failure, sizes_ok);
      ++r.simulations;
      r.worst_queries = std::max(r.worst_queries, q);
      if (!sizes_ok) r.query_sizes_ok = false;
      if (!failure.empty() && r.correctness_ok) {
        r.correctness_ok = false;
        r.failing_hidden = hidden_sets[i];
        r.failure = failure;
      }
    }
    return r;
  };

  VerifyReport total;
  if (jobs <= 1 || hidden_sets.size() < 64) {
    total = run_chunk(0, hidden_sets.size());
  } else {
    std::size_t chunk = (hidden_sets.size() + jobs - 1) / static_cast<std::size_t>(jobs);
    std::vector<std::future<VerifyReport>> futs;
    for (std::size_t lo = 0; lo < hidden_sets.size(); lo += chunk)
      futs.push_back(std::async(std::launch::async, run_chunk, lo,
                                std::min(lo + chunk, hidden_sets.size())));
    for (auto& f : futs) {
      VerifyReport r = f.get();
      total.simulations += r.simulations;
      total.worst_queries = std::max(total.worst_queries, r.worst_queries);
      total.query_sizes_ok = total.query_sizes_ok && r.query_sizes_ok;
      if (!r.correctness_ok && total.correctness_ok) {
        total.correctness_ok = false;
        total.failing_hidden = r.failing_hidden;
        total.failure = r.failure;
      }
    }
  }
  total.bound_ok = total.worst_queries <= bound;
  return total;
}

}  // namespace dgt
