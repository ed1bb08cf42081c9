#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgt/core.hpp"

namespace dgt {

/// Smallest q >= 0 with 2^q >= x.  Integer bit arithmetic only.
inline int ceil_log2(long long x) {
  if (x < 1) throw std::invalid_argument("ceil_log2: argument must be >= 1");
  int q = 0;
  long long p = 1;
  while (p < x) {
    p <<= 1;
    ++q;
  }
  return q;
}

/// Largest q >= 0 with 2^q <= x.
inline int floor_log2(long long x) {
  if (x < 1) throw std::invalid_argument("floor_log2: argument must be >= 1");
  int q = 0;
  while ((x >>= 1) != 0) ++q;
  return q;
}

inline long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

/// delta = floor(2 * frac(1/alpha)); always 0 or 1.  Sizes the largest
/// "big" question 2a+delta in the two-defective regime.
inline int delta_of(const Rational& alpha) {
  int a = floor_inv_alpha(alpha);
  return static_cast<int>(2 * alpha.den() / alpha.num() - 2 * a);
}

/// 2^ceil(log2 a).
inline int pow2_ceil_log(int a) { return 1 << ceil_log2(a); }

/// Distinct-outputs lower bound: ceil(log2(n-k+1)) questions are needed to
/// certify one of k defectives among n elements, even with arbitrary
/// yes-no questions.
inline int info_lower(int n, int k) {
  if (k > n || k < 1) throw std::invalid_argument("info_lower: need 1 <= k <= n");
  return ceil_log2(n - k + 1);
}

/// With p disjoint blocks of size >= n each holding a defective (m <= p),
/// finding m defectives needs at least ceil(m log2 n) questions.
inline int multi_target_lower(int p, int n, int m) {
  if (m > p || m < 1 || n < 1) throw std::invalid_argument("multi_target_lower: need 1 <= m <= p, n >= 1");
  __int128 target = 1;
  for (int i = 0; i < m; ++i) {
    target *= n;
    if (target > (static_cast<__int128>(1) << 120))
      throw std::invalid_argument("multi_target_lower: n^m too large");
  }
  int q = 0;
  __int128 p2 = 1;
  while (p2 < target) {
    p2 <<= 1;
    ++q;
  }
  return q;
}

struct BoundReport {
  enum class Kind { Lower, Upper };
  std::string name;
  Kind kind;
  bool applicable;
  std::optional<long long> value;  // empty when symbolic / solver-delegated
  std::string condition;
  std::string note;
};

inline const char* to_string(BoundReport::Kind k) {
  return k == BoundReport::Kind::Lower ? "lower" : "upper";
}

/// Side condition of the doubling strategy: k >= n/a - floor(log2(n/a)) - 1,
/// evaluated exactly as a(k + t + 1) >= n with t = floor(log2(n/a)).
inline bool doubling_condition(int n, int k, int a) {
  if (n <= 2 * a) return k >= 1;
  int t = floor_log2(n / a);
  return static_cast<long long>(a) * (k + t + 1) >= n && k >= 1;
}

/// Side condition of the m=1 partition strategy: k + log2 k + 1 <= ceil(n/a).
inline bool m1_partition_condition(int n, int k, int a) {
  long long rhs = ceil_div(n, a) - k - 1;
  if (rhs < 0) return false;
  if (rhs >= 62) return true;
  return (1LL << rhs) >= k;
}

/// Two-defective exact regime: k = 2 and n <= 3a + delta + 2^ceil(log a).
inline bool two_defective_exact_condition(int n, int k, const Rational& alpha) {
  if (k != 2 || n < 3) return false;
  int a = floor_inv_alpha(alpha);
  return n <= 3 * a + delta_of(alpha) + pow2_ceil_log(a);
}

/// Every displayed closed-form bound, evaluated where its side condition
/// holds.  Bounds whose constants are not determined in closed form are
/// reported without a numeric value.
inline std::vector<BoundReport> theorem_bounds(const Instance& inst) {
  std::vector<BoundReport> out;
  const int n = inst.n, k = inst.k, m = inst.m;
  const int a = inst.a();
  using K = BoundReport::Kind;

  out.push_back({"info-lower", K::Lower, true, info_lower(n, k), "always", ""});

  bool halving_ok = inst.alpha.num() * static_cast<long long>(n) <=
                    inst.alpha.den() * static_cast<long long>(k);
  if (m == 1) {
    out.push_back({"halving-upper", K::Upper, halving_ok,
                   halving_ok ? std::optional<long long>(ceil_log2(n)) : std::nullopt,
                   "alpha <= k/n", ""});
  } else {
    out.push_back({"halving-upper", K::Upper, halving_ok, std::nullopt, "alpha <= k/n",
                   "log n plus a residual constant; the constant is solver-delegated"});
  }

  bool dbl_ok = m == 1 && doubling_condition(n, k, a);
  out.push_back({"doubling-upper", K::Upper, dbl_ok,
                 dbl_ok ? std::optional<long long>(ceil_log2(n) + 1) : std::nullopt,
                 "m = 1 and k >= n/a - floor(log(n/a)) - 1", ""});

  out.push_back({"linear-upper", K::Upper, true, n / a + static_cast<long long>(m) * a + 1,
                 "always", ""});
  out.push_back({"linear-lower", K::Lower, true, std::nullopt, "always",
                 "n/a minus a constant depending on k, alpha, m; symbolic only"});

  bool m1p_ok = m == 1 && m1_partition_condition(n, k, a);
  out.push_back({"m1-partition-upper", K::Upper, m1p_ok,
                 m1p_ok ? std::optional<long long>(ceil_div(n, a) - k + ceil_log2(a)) : std::nullopt,
                 "m = 1 and k + log k + 1 <= ceil(n/a)", ""});

  out.push_back({"refine-upper", K::Upper, true,
                 ceil_div(n, a) + static_cast<long long>(m) * ceil_log2(a) + k, "always", ""});
  out.push_back({"refine-lower", K::Lower, true, std::nullopt, "always",
                 "n/a + m log a minus a constant depending on k; symbolic only"});

  bool c12_ok = m == 1 && two_defective_exact_condition(n, k, inst.alpha);
  out.push_back({"two-defective-exact", K::Upper, c12_ok,
                 c12_ok ? std::optional<long long>(ceil_log2(n - 1)) : std::nullopt,
                 "k = 2, m = 1, 3 <= n <= 3a + delta + 2^ceil(log a)",
                 c12_ok ? "matches info-lower, so the value is exact" : ""});

  return out;
}

/// Cross-check: every applicable numeric upper bound dominates every
/// applicable numeric lower bound.
inline bool bounds_consistent(const std::vector<BoundReport>& reports) {
  long long best_lower = -1, best_upper = -1;
  bool have_upper = false;
  for (const auto& r : reports) {
    if (!r.applicable || !r.value) continue;
    if (r.kind == BoundReport::Kind::Lower) best_lower = std::max(best_lower, *r.value);
    if (r.kind == BoundReport::Kind::Upper) {
      best_upper = have_upper ? std::min(best_upper, *r.value) : *r.value;
      have_upper = true;
    }
  }
  return !have_upper || best_lower <= best_upper;
}

}  // namespace dgt
