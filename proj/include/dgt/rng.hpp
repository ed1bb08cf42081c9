#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dgt/element_set.hpp"

namespace dgt {

/// Seeded generator with platform-independent derived draws.  mt19937_64 is
/// fully specified by the standard; we avoid std::uniform_int_distribution,
/// whose mapping is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform-ish draw in [0, n); rejection-free modulo mapping (the bias is
  /// irrelevant at the scales used here but the sequence is reproducible).
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

/// Uniform random k-subset of {0,...,n-1} via partial Fisher-Yates.
inline ElementSet random_subset(Rng& rng, int n, int k) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  ElementSet s(n);
  for (int i = 0; i < k; ++i) {
    std::size_t j = static_cast<std::size_t>(i) +
                    static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    s.insert(pool[static_cast<std::size_t>(i)]);
  }
  return s;
}

}  // namespace dgt
