#pragma once

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "dgt/core.hpp"
#include "dgt/rng.hpp"

namespace dgt {

/// Consistency-keeping adversary: answers whichever way keeps the larger
/// candidate family alive (ties broken towards NO).  Never empties the
/// family, so its transcripts always admit a hidden defective set.
class LazyAdversary {
 public:
  explicit LazyAdversary(const Instance& inst, long long cap = kDefaultEnumerationCap)
      : instance_(inst) {
    if (inst.semantics != Semantics::ExactlyK)
      throw std::invalid_argument("LazyAdversary: requires exactly-k semantics");
    Transcript empty(inst);
    family_ = consistent_candidates(empty, cap).candidates;
  }

  Answer answer(const ElementSet& query) {
    std::vector<ElementSet> yes_side, no_side;
    for (const ElementSet& d : family_)
      (oracle_answer(query, d, instance_.alpha) == Answer::Yes ? yes_side : no_side).push_back(d);
    if (yes_side.empty() && no_side.empty())
      throw InconsistentTranscript("LazyAdversary: empty candidate family");
    if (yes_side.size() > no_side.size()) {
      family_ = std::move(yes_side);
      return Answer::Yes;
    }
    family_ = std::move(no_side);
    return Answer::No;
  }

  const std::vector<ElementSet>& candidates() const { return family_; }
  const Instance& instance() const { return instance_; }

 private:
  Instance instance_;
  std::vector<ElementSet> family_;
};

/// Threshold c*a for the weight adversary, with c = 2k^2 (2^(2k^2) - 1).
/// Saturates; already for k = 3 the value dwarfs any desk-scale ground set.
inline long long default_weight_threshold(int k, int a) {
  long long kk = 2LL * k * k;
  if (kk >= 62) return LLONG_MAX / 4;
  __int128 c = static_cast<__int128>(kk) * ((static_cast<__int128>(1) << kk) - 1);
  __int128 t = c * a;
  if (t > LLONG_MAX / 4) return LLONG_MAX / 4;
  return static_cast<long long>(t);
}

/// Weight-bookkeeping adversary: always answers NO, charges weight 1 to the
/// elements of small questions (size <= a) and a/floor(k/alpha) to those of
/// larger ones, and evicts an element from the live pool S' as soon as its
/// weight reaches 1.  Once a question would shrink S' below the threshold it
/// signals the end of phase 1 instead of answering.
class WeightAdversary {
 public:
  explicit WeightAdversary(const Instance& inst,
                           std::optional<long long> threshold = std::nullopt)
      : instance_(inst),
        a_(inst.a()),
        big_query_cap_(static_cast<long long>(inst.k) * inst.alpha.den() / inst.alpha.num()),
        threshold_(threshold ? *threshold : default_weight_threshold(inst.k, a_)),
        weights_(static_cast<std::size_t>(inst.n), Rational(0, 1)),
        live_(ElementSet::full(inst.n)) {}

  /// NO, or nullopt when phase 1 is over (state left untouched in that case).
  std::optional<Answer> answer(const ElementSet& query) {
    if (query.empty()) throw std::invalid_argument("WeightAdversary: empty query");
    if (phase_over_) throw std::logic_error("WeightAdversary: phase 1 already ended");
    Rational charge = query.size() <= a_ ? Rational(1, 1) : Rational(a_, big_query_cap_);

    int survivors = 0;
    for (int e : live_.elements()) {
      Rational w = weights_[static_cast<std::size_t>(e)];
      if (query.test(e)) w += charge;
      if (w < Rational(1, 1)) ++survivors;
    }
    if (survivors < threshold_) {
      phase_over_ = true;
      return std::nullopt;
    }
    for (int e : query.elements()) {
      weights_[static_cast<std::size_t>(e)] += charge;
      if (live_.test(e) && weights_[static_cast<std::size_t>(e)] >= Rational(1, 1)) live_.erase(e);
    }
    asked_.push_back(query);
    return Answer::No;
  }

  const ElementSet& live_set() const { return live_; }
  const std::vector<ElementSet>& asked() const { return asked_; }
  long long asked_count() const { return static_cast<long long>(asked_.size()); }
  bool phase_over() const { return phase_over_; }
  long long threshold() const { return threshold_; }
  const Instance& instance() const { return instance_; }
  int small_size_cap() const { return a_; }
  long long big_query_cap() const { return big_query_cap_; }

  Rational weight_of(int e) const { return weights_[static_cast<std::size_t>(e)]; }

  Rational total_weight() const {
    Rational sum(0, 1);
    for (const Rational& w : weights_) sum += w;
    return sum;
  }

  /// The surviving parts of the big questions: { F intersect S' : |F| > a }.
  std::vector<ElementSet> surviving_big_queries() const {
    std::vector<ElementSet> out;
    for (const ElementSet& f : asked_)
      if (f.size() > a_) out.push_back(f & live_);
    return out;
  }

 private:
  Instance instance_;
  int a_;
  long long big_query_cap_;
  long long threshold_;
  std::vector<Rational> weights_;
  ElementSet live_;
  std::vector<ElementSet> asked_;
  bool phase_over_ = false;
};

struct ObservationReport {
  bool live_size_ok = true;        // |S'| >= threshold
  bool member_size_ok = true;      // every surviving big query has size <= 2ka
  bool multiplicity_ok = true;     // every live element lies in <= 2k of them
  bool replay_ok = true;           // sampled sparse k-sets are consistent hidden sets
  int replay_samples = 0;
  std::string witness;

  bool all_ok() const { return live_size_ok && member_size_ok && multiplicity_ok && replay_ok; }
};

/// Checks the structural facts phase 1 leaves behind.  The last bullet is
/// verified by sampling k-sets of live elements that meet every surviving
/// big query in at most one element and replaying the transcript on them.
inline ObservationReport observation_checks(const WeightAdversary& adv, std::uint64_t seed = 1,
                                            int samples = 20) {
  ObservationReport rep;
  const Instance& inst = adv.instance();
  const int a = adv.small_size_cap();
  const auto fprime = adv.surviving_big_queries();

  if (adv.live_set().size() < adv.threshold()) {
    rep.live_size_ok = false;
    rep.witness = "live pool smaller than threshold";
  }
  for (const ElementSet& f : fprime)
    if (f.size() > 2 * inst.k * a) {
      rep.member_size_ok = false;
      rep.witness = "surviving big query of size " + std::to_string(f.size());
      break;
    }
  for (int e : adv.live_set().elements()) {
    int deg = 0;
    for (const ElementSet& f : fprime)
      if (f.test(e)) ++deg;
    if (deg > 2 * inst.k) {
      rep.multiplicity_ok = false;
      rep.witness = "element " + std::to_string(e) + " lies in " + std::to_string(deg) + " sets";
      break;
    }
  }

  // Sparse transversal sampling for the consistency bullet.
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    ElementSet d(inst.n);
    std::vector<int> pool = adv.live_set().elements();
    for (std::size_t i = pool.size(); i > 1; --i)
      std::swap(pool[i - 1], pool[static_cast<std::size_t>(rng.below(i))]);
    for (int e : pool) {
      if (d.size() == inst.k) break;
      bool ok = true;
      for (const ElementSet& f : fprime)
        if (f.test(e) && f.intersects(d)) {
          ok = false;
          break;
        }
      if (ok) d.insert(e);
    }
    if (d.size() != inst.k) continue;  // sampling failed to build one; not a violation
    ++rep.replay_samples;
    for (const ElementSet& q : adv.asked())
      if (oracle_answer(q, d, inst.alpha) != Answer::No) {
        rep.replay_ok = false;
        rep.witness = "sparse set " + d.str() + " contradicts a recorded answer";
        return rep;
      }
  }
  return rep;
}

}  // namespace dgt
