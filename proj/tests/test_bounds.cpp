#include <catch2/catch_amalgamated.hpp>

#include "dgt/bounds.hpp"

using namespace dgt;

TEST_CASE("integer log helpers") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(23) == 5);
  CHECK(ceil_log2(24) == 5);
  CHECK(ceil_log2(1LL << 40) == 40);
  CHECK(floor_log2(1) == 0);
  CHECK(floor_log2(7) == 2);
  CHECK(floor_log2(8) == 3);
  CHECK(ceil_div(24, 5) == 5);
  CHECK(ceil_div(25, 5) == 5);
  CHECK_THROWS_AS(ceil_log2(0), std::invalid_argument);
  CHECK_THROWS_AS(floor_log2(0), std::invalid_argument);
}

TEST_CASE("delta and the big-question ceiling") {
  // delta = floor(2 * frac(1/alpha))
  CHECK(delta_of(Rational(2, 11)) == 1);  // 1/alpha = 5.5
  CHECK(delta_of(Rational(1, 5)) == 0);
  CHECK(delta_of(Rational(2, 5)) == 1);  // 1/alpha = 2.5
  CHECK(delta_of(Rational(1, 2)) == 0);
  CHECK(delta_of(Rational(3, 7)) == 0);  // 1/alpha = 2.33
  CHECK(delta_of(Rational(4, 7)) == 1);  // 1/alpha = 1.75
  CHECK(pow2_ceil_log(5) == 8);
  CHECK(pow2_ceil_log(4) == 4);
  CHECK(pow2_ceil_log(1) == 1);
}

TEST_CASE("information lower bound") {
  CHECK(info_lower(24, 2) == 5);   // ceil(log 23)
  CHECK(info_lower(24, 1) == 5);
  CHECK(info_lower(10, 4) == 3);   // ceil(log 7)
  CHECK(info_lower(5, 5) == 0);
  CHECK_THROWS_AS(info_lower(5, 6), std::invalid_argument);
}

TEST_CASE("multi target lower bound") {
  CHECK(multi_target_lower(3, 8, 2) == 6);    // ceil(log 64)
  CHECK(multi_target_lower(4, 10, 3) == 10);  // ceil(log 1000)
  CHECK(multi_target_lower(2, 1, 1) == 0);
  CHECK_THROWS_AS(multi_target_lower(1, 8, 2), std::invalid_argument);
}

TEST_CASE("doubling side condition") {
  // a(k + t + 1) >= n with t = floor(log2(n/a)); small n needs only k >= 1
  CHECK(doubling_condition(8, 1, 5));
  CHECK(doubling_condition(24, 4, 3));        // 3*(4+3+1) = 24, equality
  CHECK_FALSE(doubling_condition(25, 4, 3));  // 3*(4+3+1) = 24 < 25
  CHECK(doubling_condition(25, 5, 3));
  CHECK(doubling_condition(24, 2, 5));        // 5*(2+2+1) = 25 >= 24
  // once true, stays true as k grows
  for (int n = 2; n <= 40; ++n)
    for (int a = 1; a <= 6; ++a) {
      bool prev = false;
      for (int k = 1; k <= n; ++k) {
        bool cur = doubling_condition(n, k, a);
        if (prev) CHECK(cur);
        prev = cur;
      }
    }
}

TEST_CASE("one target partition side condition") {
  // 2^(ceil(n/a) - k - 1) >= k
  CHECK(m1_partition_condition(24, 1, 5));   // 2^3 >= 1
  CHECK(m1_partition_condition(24, 2, 5));   // 2^2 >= 2
  CHECK_FALSE(m1_partition_condition(24, 3, 5));  // 2^1 < 3
  CHECK_FALSE(m1_partition_condition(10, 2, 5));
  CHECK(m1_partition_condition(1000, 3, 5));
}

TEST_CASE("two defective exact regime") {
  // n <= 3a + delta + 2^ceil(log a); for alpha=2/11 this is 15+1+8 = 24
  CHECK(two_defective_exact_condition(24, 2, Rational(2, 11)));
  CHECK_FALSE(two_defective_exact_condition(25, 2, Rational(2, 11)));
  CHECK(two_defective_exact_condition(9, 2, Rational(2, 5)));  // 6+1+2 = 9
  CHECK_FALSE(two_defective_exact_condition(10, 2, Rational(2, 5)));
  CHECK_FALSE(two_defective_exact_condition(24, 3, Rational(2, 11)));
}

TEST_CASE("theorem bounds on the flagship instance") {
  Instance inst(24, 2, Rational(2, 11), 1);
  auto reports = theorem_bounds(inst);
  auto find = [&](const std::string& name) -> const BoundReport& {
    for (const auto& r : reports)
      if (r.name == name) return r;
    FAIL("missing bound " + name);
    return reports.front();
  };
  CHECK(find("info-lower").value == 5);
  CHECK_FALSE(find("halving-upper").applicable);  // 2*24 > 11*2
  CHECK(find("doubling-upper").value == 6);
  CHECK(find("m1-partition-upper").value == 6);
  CHECK(find("refine-upper").value == 10);   // 5 + 3 + 2
  CHECK(find("linear-upper").value == 10);   // 4 + 5 + 1
  CHECK(find("two-defective-exact").value == 5);
  CHECK_FALSE(find("linear-lower").value.has_value());
  CHECK_FALSE(find("refine-lower").value.has_value());
  CHECK(bounds_consistent(reports));
}

TEST_CASE("bounds stay mutually consistent on a grid") {
  for (auto [num, den] : {std::pair<long long, long long>{1, 2}, {1, 3}, {2, 5}, {2, 11}, {3, 7}})
    for (int n = 1; n <= 30; ++n)
      for (int k = 1; k <= n; ++k)
        for (int m : {1, k}) {
          Instance inst(n, k, Rational(num, den), m);
          CAPTURE(n, k, m, num, den);
          CHECK(bounds_consistent(theorem_bounds(inst)));
        }
}
