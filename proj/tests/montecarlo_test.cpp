#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "enumerators.hpp"
#include "klazar/correspond.hpp"
#include "klazar/enumerate.hpp"
#include "klazar/error.hpp"
#include "klazar/montecarlo.hpp"
#include "klazar/rng.hpp"

using namespace klazar;
using namespace klazar::testing;

TEST_CASE("sampling determinism and shape") {
  const auto a = sample_points(5, 2, 1234);
  const auto b = sample_points(5, 2, 1234);
  CHECK(a.points == b.points);
  CHECK(a.seed == 1234);
  const auto c = sample_points(5, 2, 1235);
  CHECK(a.points != c.points);
  CHECK(a.n() == 5);
  CHECK(a.points.front().size() == 3);
  const auto single = sample_points(1, 1, 9);
  CHECK(single.n() == 1);
  CHECK_THROWS_AS(sample_points(0, 1, 1), domain_error);
}

TEST_CASE("coordinate mean over many samples sits within 3 sigma of 1/2") {
  SplitMix64 seeds(50);
  const int samples = 100000;
  double sum = 0.0;
  SplitMix64 rng(derive_stream(50, 0));
  for (int i = 0; i < samples; ++i) sum += rng.next_unit();
  const double mean = sum / samples;
  const double sigma = std::sqrt(1.0 / 12.0 / samples);
  CHECK(std::abs(mean - 0.5) < 3 * sigma);
  (void)seeds;
}

TEST_CASE("tuple extraction fixtures") {
  // coordinates already aligned: the identity tuple
  const auto aligned = make_point_cloud(
      2, {{0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}, {0.7, 0.8, 0.9}});
  const auto t = tuple_from_points(aligned);
  CHECK(t.arity() == 2);
  CHECK(t[0].images() == std::vector<int>{1, 2, 3});
  CHECK(t[1].images() == std::vector<int>{1, 2, 3});
  // two points with the second coordinate reversed
  const auto rev = make_point_cloud(1, {{0.2, 0.9}, {0.7, 0.1}});
  CHECK(tuple_from_points(rev)[0].images() == std::vector<int>{2, 1});
  // order is by first coordinate, not input order
  const auto swapped = make_point_cloud(1, {{0.7, 0.1}, {0.2, 0.9}});
  CHECK(tuple_from_points(swapped)[0].images() == std::vector<int>{2, 1});
  CHECK_THROWS_AS(tuple_from_points(make_point_cloud(1, {{0.1, 0.5},
                                                         {0.1, 0.6}})),
                  domain_error);
}

TEST_CASE("induced tuples are uniform: chi-square over S_3 at k = 1") {
  const int trials = 60000;
  std::map<std::vector<int>, int> hits;
  for (int t = 0; t < trials; ++t) {
    const auto cloud = sample_points(3, 1, derive_stream(777, t));
    ++hits[tuple_from_points(cloud)[0].images()];
  }
  CHECK(hits.size() == 6);
  const double expected = trials / 6.0;
  double chi2 = 0.0;
  for (const auto& [perm, count] : hits)
    chi2 += (count - expected) * (count - expected) / expected;
  // 5 degrees of freedom; p = 0.001 cutoff is 20.515
  CHECK(chi2 < 20.515);
}

TEST_CASE("q_1(3) estimate within 3 sigma of 1/6") {
  const auto est = estimate_qk(3, 1, 100000, 424242);
  CHECK(est.trials == 100000);
  CHECK(std::abs(est.estimate - 1.0 / 6.0) < 3 * est.stderr_);
}

TEST_CASE("q_2(2) estimate within 3 sigma of the exhaustive 3/4") {
  // exhaustive: of the 4 pairs in S_2 x S_2 only (12,12) contains (12,12)
  int avoiders = 0;
  for (const auto& t : all_tuples(2, 2))
    if (!parallel_contains(to_tuple(t),
                           parse_perm_tuple("12|12")))
      ++avoiders;
  CHECK(avoiders == 3);
  const auto est = estimate_qk(2, 2, 40000, 99);
  CHECK(std::abs(est.estimate - 0.75) < 3 * est.stderr_);
}

TEST_CASE("estimates are reproducible and schedule-independent by design") {
  const auto a = estimate_qk(4, 2, 5000, 31337);
  const auto b = estimate_qk(4, 2, 5000, 31337);
  CHECK(a.successes == b.successes);
  CHECK(a.estimate == b.estimate);
}

TEST_CASE("antichain fixtures") {
  CHECK(antichain_check(make_point_cloud(1, {{0.5, 0.5}})));
  CHECK(!antichain_check(make_point_cloud(1, {{0.1, 0.2}, {0.3, 0.4}})));
  CHECK(antichain_check(make_point_cloud(1, {{0.1, 0.4}, {0.3, 0.2}})));
}

TEST_CASE("antichain equals parallel 12-avoidance on sampled clouds") {
  for (int k = 1; k <= 2; ++k) {
    std::vector<Permutation> asc(static_cast<size_t>(k),
                                 Permutation::identity(2));
    const PermTuple pattern(asc);
    for (int t = 0; t < 3000; ++t) {
      const auto cloud = sample_points(2 + t % 6, k, derive_stream(606, t));
      const bool avoid =
          !parallel_contains(tuple_from_points(cloud), pattern);
      CHECK(avoid == antichain_check(cloud));
    }
  }
}

TEST_CASE("grid implication: r = 1 is vacuously consistent") {
  for (int t = 0; t < 50; ++t) {
    const auto cloud = sample_points(4, 1, derive_stream(17, t));
    CHECK(grid_implication_check(cloud, parse_perm_tuple("12"), 1) !=
          GridCheckVerdict::violation);
  }
}

TEST_CASE("a constructed converse gap: both witness points share a box") {
  const auto cloud = make_point_cloud(1, {{0.10, 0.11}, {0.15, 0.16}});
  // the tuple is (12): it contains the pattern
  CHECK(parallel_contains(tuple_from_points(cloud), parse_perm_tuple("12")));
  // but the grid matrix at r = 2 has a single one, so it avoids
  CHECK(grid_implication_check(cloud, parse_perm_tuple("12"), 2) ==
        GridCheckVerdict::converse_gap);
}

TEST_CASE("no violations over random clouds (light harness)") {
  const auto pattern12 = parse_perm_tuple("12");
  const auto pattern22 = parse_perm_tuple("12|12");
  for (int t = 0; t < 1500; ++t) {
    const auto c1 = sample_points(2 + t % 7, 1, derive_stream(808, t));
    CHECK(grid_implication_check(c1, pattern12, 2 + t % 4) !=
          GridCheckVerdict::violation);
    const auto c2 = sample_points(2 + t % 7, 2, derive_stream(809, t));
    CHECK(grid_implication_check(c2, pattern22, 2 + t % 4) !=
          GridCheckVerdict::violation);
  }
}

TEST_CASE("run_mc aggregates and reports") {
  McOptions opts;
  opts.r = 4;
  const auto report = run_mc(4, 2, 2000, 2718, opts);
  CHECK(report.trials == 2000);
  CHECK(report.seed == 2718);
  CHECK(report.violations == 0);
  CHECK(report.grid_checked);
  CHECK(report.r == 4);
  CHECK(report.estimate == doctest::Approx(
                              static_cast<double>(report.successes) / 2000));
  // same seed, same report
  const auto again = run_mc(4, 2, 2000, 2718, opts);
  CHECK(again.successes == report.successes);
  CHECK(again.converse_gaps == report.converse_gaps);
  CHECK_THROWS_AS(run_mc(3, 1, 0, 1, {}), domain_error);
}
