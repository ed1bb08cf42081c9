#pragma once

#include <algorithm>
#include <list>
#include <string>
#include <vector>

#include "dgt/element_set.hpp"

namespace dgt {

/// Input to heap selection: a set system over a ground set of size
/// k * beta * (2^(kl) - 1) * a, every member of size at most beta*a, every
/// element in at most l members.
struct HeapConfig {
  int k;
  int l;
  int beta;
  int a;
  std::vector<ElementSet> family;

  long long ground_size() const {
    return static_cast<long long>(k) * beta * ((1LL << (k * l)) - 1) * a;
  }

  /// Empty string when valid, otherwise the violated hypothesis.
  std::string validate() const {
    if (k < 1 || l < 1 || beta < 1 || a < 1) return "k, l, beta, a must be positive";
    if (k * l >= 62) return "k*l too large";
    long long n = ground_size();
    std::vector<int> usage(static_cast<std::size_t>(n), 0);
    for (const ElementSet& h : family) {
      if (h.universe() != n) return "family set universe differs from the ground set";
      if (h.size() > beta * a) return "family set larger than beta*a";
      for (int e : h.elements())
        if (++usage[static_cast<std::size_t>(e)] > l)
          return "element " + std::to_string(e) + " lies in more than l sets";
    }
    return "";
  }
};

struct HeapResult {
  std::vector<ElementSet> heaps;
  int iterations = 0;
};

/// Selects k disjoint heaps of size >= beta*a such that every family set
/// intersects at most one heap.  Runs at most kl-1 rounds; each round grows
/// a subfamily until some heap is half covered, keeps the covered part of
/// the heap with maximal cover excess and the uncovered parts of the rest,
/// and drops the consumed subfamily.
inline HeapResult select_heaps(const HeapConfig& cfg) {
  std::string err = cfg.validate();
  if (!err.empty()) throw std::invalid_argument("select_heaps: " + err);

  const int n = static_cast<int>(cfg.ground_size());
  const long long heap0 = static_cast<long long>(cfg.beta) * ((1LL << (cfg.k * cfg.l)) - 1) * cfg.a;

  HeapResult res;
  for (int i = 0; i < cfg.k; ++i) {
    ElementSet h(n);
    for (long long e = i * heap0; e < (i + 1) * heap0; ++e) h.insert(static_cast<int>(e));
    res.heaps.push_back(h);
  }

  std::list<ElementSet> remaining(cfg.family.begin(), cfg.family.end());
  const int max_rounds = cfg.k * cfg.l - 1;
  while (res.iterations < max_rounds && !remaining.empty()) {
    ElementSet cover(n);
    int selected = -1;
    auto it = remaining.begin();
    auto consumed_end = it;
    for (; it != remaining.end(); ++it) {
      cover = cover | *it;
      consumed_end = std::next(it);
      long long best_excess = -1;
      for (int i = 0; i < cfg.k; ++i) {
        long long covered = res.heaps[static_cast<std::size_t>(i)].intersection_size(cover);
        long long excess = 2 * covered - res.heaps[static_cast<std::size_t>(i)].size();
        if (excess >= 0 && excess > best_excess) {
          best_excess = excess;
          selected = i;
        }
      }
      if (selected >= 0) break;
    }
    if (selected < 0) {
      // Family exhausted with every heap less than half covered: discard the
      // covered elements and the remaining sets touch no heap at all.
      for (auto& h : res.heaps) h = h - cover;
      remaining.clear();
      break;
    }
    for (int i = 0; i < cfg.k; ++i) {
      auto& h = res.heaps[static_cast<std::size_t>(i)];
      h = (i == selected) ? (h & cover) : (h - cover);
    }
    remaining.erase(remaining.begin(), consumed_end);
    ++res.iterations;
  }
  return res;
}

/// Two-heap special case: ground set of size 3a, family of pairwise disjoint
/// sets of size at most 2a.  Returns two disjoint heaps of size >= a with
/// every family set meeting at most one of them.
inline HeapResult select_heaps_k2_disjoint(int a, const std::vector<ElementSet>& family) {
  const int n = 3 * a;
  if (a < 1) throw std::invalid_argument("select_heaps_k2_disjoint: a must be positive");
  ElementSet seen(n);
  for (const ElementSet& f : family) {
    if (f.universe() != n) throw std::invalid_argument("select_heaps_k2_disjoint: universe mismatch");
    if (f.size() > 2 * a) throw std::invalid_argument("select_heaps_k2_disjoint: set larger than 2a");
    if (f.intersects(seen)) throw std::invalid_argument("select_heaps_k2_disjoint: sets not disjoint");
    seen = seen | f;
  }

  HeapResult res;
  // A set of size >= a donates one whole heap; everything outside it is the
  // other heap and no set is split.
  const ElementSet* big = nullptr;
  for (const ElementSet& f : family)
    if (f.size() >= a && (!big || f.size() > big->size())) big = &f;
  if (big) {
    res.heaps = {big->take_lowest(a), ElementSet::full(n) - *big};
    return res;
  }
  // All sets smaller than a: pack whole sets (largest first) until one side
  // reaches a, topping up with elements lying in no set.
  std::vector<ElementSet> ordered = family;
  std::sort(ordered.begin(), ordered.end(), [](const ElementSet& x, const ElementSet& y) {
    return x.size() > y.size() || (x.size() == y.size() && x < y);
  });
  ElementSet side(n);
  for (const ElementSet& f : ordered) {
    if (side.size() >= a) break;
    side = side | f;
  }
  ElementSet free = ElementSet::full(n) - seen;
  for (int e : free.elements()) {
    if (side.size() >= a) break;
    side.insert(e);
  }
  res.heaps = {side, ElementSet::full(n) - side};
  return res;
}

/// Postcondition check shared by the CLI and the tests; empty = all good.
inline std::vector<std::string> heap_violations(const std::vector<ElementSet>& family,
                                                const std::vector<ElementSet>& heaps,
                                                long long min_size) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < heaps.size(); ++i) {
    if (heaps[i].size() < min_size)
      out.push_back("heap " + std::to_string(i) + " smaller than required (" +
                    std::to_string(heaps[i].size()) + " < " + std::to_string(min_size) + ")");
    for (std::size_t j = i + 1; j < heaps.size(); ++j)
      if (heaps[i].intersects(heaps[j]))
        out.push_back("heaps " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
  }
  for (const ElementSet& f : family) {
    int touched = 0;
    for (const ElementSet& h : heaps)
      if (f.intersects(h)) ++touched;
    if (touched > 1) out.push_back("family set " + f.str() + " meets " + std::to_string(touched) + " heaps");
  }
  return out;
}

}  // namespace dgt
