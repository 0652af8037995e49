#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "enumerators.hpp"
#include "klazar/correspond.hpp"
#include "klazar/enumerate.hpp"
#include "klazar/error.hpp"
#include "klazar/stats.hpp"
#include "oracles.hpp"

using namespace klazar;
using namespace klazar::testing;

TEST_CASE("thickness fixtures") {
  const auto th = thickness(parse_partition("1267/345"));
  CHECK(th.value == 3);
  // certificate realizes the value with a layered restriction
  const auto induced = restrict_to(parse_partition("1267/345"), th.certificate);
  CHECK(is_layered(induced));
  CHECK(rank(induced) == 3);
  CHECK(thickness(parse_partition("12/3456/789")).value == 6);
  CHECK(thickness_oracle(parse_partition("12/3456/789")) == 6);
  CHECK(thickness(parse_partition("1/2/3/4")).value == 0);
  CHECK(thickness(parse_partition("1/2/3/4")).certificate ==
        std::vector<int>{1});
  CHECK(thickness(parse_partition("12")).value == 1);
  CHECK_THROWS_AS(thickness(SetPartition{}), domain_error);
  CHECK_THROWS_AS(thickness_oracle(SetPartition{}), domain_error);
}

TEST_CASE("layered partitions have thickness equal to their rank") {
  for (int n = 1; n <= 8; ++n)
    for (const auto& p : all_partitions(n))
      if (is_layered(p)) CHECK(thickness(p).value == rank(p));
}

TEST_CASE("thickness equals the subset oracle: exhaustive n <= 7 plus random n <= 12") {
  for (int n = 1; n <= 7; ++n)
    for (const auto& p : all_partitions(n))
      CHECK(thickness(p).value == thickness_oracle(p));
  SplitMix64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % 12);
    const auto p = random_partition(n, rng);
    CHECK(thickness(p).value == thickness_oracle(p));
  }
}

TEST_CASE("thickness certificates always restrict to layered partitions") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % 12);
    const auto p = random_partition(n, rng);
    const auto th = thickness(p);
    const auto induced = restrict_to(p, th.certificate);
    CHECK(is_layered(induced));
    CHECK(rank(induced) == th.value);
  }
}

TEST_CASE("permutability fixtures") {
  const auto pm = permutability(parse_partition("1267/345"));
  CHECK(pm.value == 4);
  CHECK(pm.split.cut_points == std::vector<int>{0, 1, 3, 4, 6, 7});
  CHECK(split_intervals(pm.split) ==
        std::vector<std::vector<int>>{{1}, {2, 3}, {4}, {5, 6}, {7}});
  CHECK(permutability(parse_partition("1/2/3")).value == 0);
  CHECK_THROWS_AS(permutability(SetPartition{}), domain_error);
}

TEST_CASE("correspondent partitions have permutability k") {
  for (int k = 1; k <= 3; ++k)
    for (int n = 1; n <= 3; ++n)
      for (const auto& t : all_tuples(k, n))
        CHECK(permutability(build_correspondent(to_tuple(t))).value == k);
}

TEST_CASE("greedy split is minimal and feasible, exhaustive m <= 7") {
  for (int m = 1; m <= 7; ++m) {
    for (const auto& p : all_partitions(m)) {
      const auto pm = permutability(p);
      CHECK(pm.value + 1 == brute_min_split(p));
      // feasibility of the reported split
      for (const auto& interval : split_intervals(pm.split)) {
        std::vector<char> seen(static_cast<size_t>(p.block_count()), 0);
        for (int e : interval) {
          CHECK(!seen[static_cast<size_t>(p.block_of(e))]);
          seen[static_cast<size_t>(p.block_of(e))] = 1;
        }
      }
    }
  }
}

TEST_CASE("pm >= th always; equality on layered partitions (n <= 7 here)") {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& p : all_partitions(n)) {
      const int pm = permutability(p).value;
      const int th = thickness(p).value;
      CHECK(pm >= th);
      if (is_layered(p)) CHECK(pm == th);
    }
  }
}

TEST_CASE("permutability is unchanged by deleting singleton blocks, n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& p : all_partitions(n)) {
      const auto stripped = strip_singletons(p);
      if (stripped.n() == 0) {
        CHECK(permutability(p).value == 0);
      } else {
        CHECK(permutability(stripped).value == permutability(p).value);
      }
    }
  }
}

TEST_CASE("permutability oracle fixtures and guards") {
  CHECK(permutability_oracle(parse_partition("13/24"), 3) == 1);
  CHECK(permutability_oracle(parse_partition("1/2/3"), 3) == 0);
  // needs k_max = 4, which sits above the default guard
  CHECK_THROWS_AS(permutability_oracle(parse_partition("1267/345"), 4),
                  guard_error);
  CHECK(permutability_oracle(parse_partition("1267/345"), 4, true) == 4);
  CHECK(!permutability_oracle(parse_partition("1267/345"), 3, true));
  CHECK_THROWS_AS(permutability_oracle(parse_partition("12345678"), 3),
                  guard_error);
}

TEST_CASE("greedy permutability matches the tuple-definition oracle, n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& p : all_partitions(n)) {
      if (p.block_count() > 4) continue;  // oracle guard
      const int pm = permutability(p).value;
      if (pm <= 3) {
        CHECK(permutability_oracle(p, 3) == pm);
      } else {
        CHECK(!permutability_oracle(p, 3));
      }
    }
  }
}
