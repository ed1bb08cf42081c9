#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dgt/element_set.hpp"
#include "dgt/rational.hpp"

namespace dgt {

enum class Answer { No, Yes };
enum class Semantics { ExactlyK, AtLeastK };

inline const char* to_string(Answer a) { return a == Answer::Yes ? "yes" : "no"; }
inline const char* to_string(Semantics s) { return s == Semantics::ExactlyK ? "exactly-k" : "at-least-k"; }

struct EnumerationCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentTranscript : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotApplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Default cap on candidate-family enumeration (number of k-subsets).
inline constexpr long long kDefaultEnumerationCap = 2'000'000;

/// Binomial coefficient, saturating at a large sentinel instead of overflowing.
inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    __int128 t = static_cast<__int128>(r) * (n - k + i) / i;
    if (t > static_cast<__int128>(4'000'000'000'000'000'000LL)) return 4'000'000'000'000'000'000LL;
    r = static_cast<long long>(t);
  }
  return r;
}

struct Instance {
  int n;
  int k;
  Rational alpha;
  int m;
  Semantics semantics = Semantics::ExactlyK;

  Instance(int n_, int k_, Rational alpha_, int m_, Semantics sem = Semantics::ExactlyK)
      : n(n_), k(k_), alpha(std::move(alpha_)), m(m_), semantics(sem) {
    if (n < 1) throw std::invalid_argument("Instance: n must be positive");
    if (!(1 <= m && m <= k && k <= n))
      throw std::invalid_argument("Instance: need 1 <= m <= k <= n");
    if (!alpha.positive() || alpha >= Rational(1, 1))
      throw std::invalid_argument("Instance: alpha must lie in (0,1)");
  }

  int a() const { return floor_inv_alpha(alpha); }
  ElementSet ground_set() const { return ElementSet::full(n); }
};

/// Largest query size worth asking: any larger set answers NO unconditionally.
inline int max_useful_query_size(const Instance& inst) {
  long long v = static_cast<long long>(inst.k) * inst.alpha.den() / inst.alpha.num();
  return static_cast<int>(v < inst.n ? v : inst.n);
}

/// YES iff the defectives make up at least an alpha fraction of the query.
/// Exact cross-multiplied comparison.
inline Answer oracle_answer(const ElementSet& query, const ElementSet& defectives,
                            const Rational& alpha) {
  if (query.empty()) throw std::invalid_argument("oracle_answer: empty query");
  long long hit = query.intersection_size(defectives);
  bool yes = alpha.den() * hit >= alpha.num() * static_cast<long long>(query.size());
  return yes ? Answer::Yes : Answer::No;
}

struct Transcript {
  Instance instance;
  std::vector<std::pair<ElementSet, Answer>> entries;

  explicit Transcript(Instance inst) : instance(std::move(inst)) {}

  void record(const ElementSet& query, Answer answer) {
    if (query.universe() != instance.n)
      throw std::invalid_argument("Transcript: query universe mismatch");
    entries.emplace_back(query, answer);
  }

  std::size_t size() const { return entries.size(); }
};

/// Either "ask this set next" or "these m elements are certified defective".
struct StrategyDecision {
  enum class Kind { Ask, Output } kind;
  ElementSet set;

  static StrategyDecision ask(ElementSet q) { return {Kind::Ask, std::move(q)}; }
  static StrategyDecision output(ElementSet found) { return {Kind::Output, std::move(found)}; }

  bool is_ask() const { return kind == Kind::Ask; }
  bool is_output() const { return kind == Kind::Output; }
};

/// Visits every k-subset of {0,...,n-1} in lexicographic order of member lists.
inline void for_each_k_subset(int n, int k, const std::function<void(const ElementSet&)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (k > n) return;
  while (true) {
    ElementSet s(n);
    for (int e : idx) s.insert(e);
    fn(s);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// All size-k hypotheses consistent with a transcript (exactly-k semantics).
struct CandidateFamily {
  Instance instance;
  std::vector<ElementSet> candidates;
};

inline CandidateFamily consistent_candidates(const Transcript& t,
                                             long long cap = kDefaultEnumerationCap) {
  const Instance& inst = t.instance;
  if (inst.semantics != Semantics::ExactlyK)
    throw std::invalid_argument("consistent_candidates: requires exactly-k semantics");
  if (binomial(inst.n, inst.k) > cap)
    throw EnumerationCapExceeded("instance too large to enumerate: C(" + std::to_string(inst.n) +
                                 "," + std::to_string(inst.k) + ") exceeds cap");
  CandidateFamily fam{inst, {}};
  for_each_k_subset(inst.n, inst.k, [&](const ElementSet& d) {
    for (const auto& [q, ans] : t.entries)
      if (oracle_answer(q, d, inst.alpha) != ans) return;
    fam.candidates.push_back(d);
  });
  return fam;
}

/// Elements defective under every consistent hypothesis.
inline ElementSet certified_defectives(const CandidateFamily& fam) {
  if (fam.candidates.empty())
    throw InconsistentTranscript("certified_defectives: empty candidate family");
  ElementSet acc = fam.candidates.front();
  for (std::size_t i = 1; i < fam.candidates.size(); ++i) acc = acc & fam.candidates[i];
  return acc;
}

}  // namespace dgt
