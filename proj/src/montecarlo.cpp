#include "klazar/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "klazar/correspond.hpp"
#include "klazar/error.hpp"
#include "klazar/rng.hpp"

namespace klazar {

PointCloud make_point_cloud(int k, std::vector<std::vector<double>> points,
                            std::uint64_t seed) {
  if (k < 1) throw domain_error("point clouds need k >= 1");
  for (const auto& point : points) {
    if (static_cast<int>(point.size()) != k + 1)
      throw domain_error("every point needs k+1 coordinates");
    for (double c : point)
      if (!(c >= 0.0 && c < 1.0))
        throw domain_error("coordinates must lie in [0,1)");
  }
  return PointCloud{k, std::move(points), seed};
}

namespace {

bool axes_distinct(const std::vector<std::vector<double>>& points, int dims) {
  for (int axis = 0; axis < dims; ++axis) {
    std::vector<double> values;
    values.reserve(points.size());
    for (const auto& p : points) values.push_back(p[static_cast<size_t>(axis)]);
    std::sort(values.begin(), values.end());
    if (std::adjacent_find(values.begin(), values.end()) != values.end())
      return false;
  }
  return true;
}

}  // namespace

PointCloud sample_points(int n, int k, std::uint64_t seed) {
  if (n < 1 || k < 1) throw domain_error("sampling needs n >= 1 and k >= 1");
  for (std::uint64_t attempt = 0;; ++attempt) {
    SplitMix64 rng(derive_stream(seed, attempt));
    std::vector<std::vector<double>> points(
        static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(k) + 1));
    for (auto& point : points)
      for (auto& c : point) c = rng.next_unit();
    if (axes_distinct(points, k + 1))
      return PointCloud{k, std::move(points), seed};
  }
}

PermTuple tuple_from_points(const PointCloud& cloud) {
  const int n = cloud.n();
  const int k = cloud.k;
  if (n < 1) throw domain_error("empty cloud");
  if (!axes_distinct(cloud.points, k + 1))
    throw domain_error("cloud has a coordinate collision");
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return cloud.points[static_cast<size_t>(a)][0] <
           cloud.points[static_cast<size_t>(b)][0];
  });
  std::vector<Permutation> perms;
  perms.reserve(static_cast<size_t>(k));
  for (int axis = 1; axis <= k; ++axis) {
    // rank of the axis value of the j-th point in first-coordinate order
    std::vector<int> by_value(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) by_value[static_cast<size_t>(j)] = j;
    std::sort(by_value.begin(), by_value.end(), [&](int a, int b) {
      return cloud.points[static_cast<size_t>(order[static_cast<size_t>(a)])]
                         [static_cast<size_t>(axis)] <
             cloud.points[static_cast<size_t>(order[static_cast<size_t>(b)])]
                         [static_cast<size_t>(axis)];
    });
    std::vector<int> images(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r)
      images[static_cast<size_t>(by_value[static_cast<size_t>(r)])] = r + 1;
    perms.emplace_back(std::move(images));
  }
  return PermTuple(std::move(perms));
}

bool antichain_check(const PointCloud& cloud) {
  const int n = cloud.n();
  const int dims = cloud.k + 1;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      bool a_below = true, b_below = true;
      for (int axis = 0; axis < dims; ++axis) {
        const double ca = cloud.points[static_cast<size_t>(a)][static_cast<size_t>(axis)];
        const double cb = cloud.points[static_cast<size_t>(b)][static_cast<size_t>(axis)];
        if (ca >= cb) a_below = false;
        if (cb >= ca) b_below = false;
      }
      if (a_below || b_below) return false;
    }
  }
  return true;
}

namespace {

PermTuple all_ascending_pattern(int k) {
  std::vector<Permutation> perms(static_cast<size_t>(k),
                                 Permutation::identity(2));
  return PermTuple(std::move(perms));
}

}  // namespace

Estimate estimate_qk(int n, int k, std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw domain_error("need at least one trial");
  const PermTuple pattern = all_ascending_pattern(k);
  Estimate est;
  est.trials = trials;
  for (std::int64_t t = 0; t < trials; ++t) {
    const PointCloud cloud = sample_points(n, k, derive_stream(seed, static_cast<std::uint64_t>(t)));
    if (!parallel_contains(tuple_from_points(cloud), pattern)) ++est.successes;
  }
  const double p = static_cast<double>(est.successes) / static_cast<double>(trials);
  est.estimate = p;
  est.stderr_ = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return est;
}

GridCheckVerdict grid_implication_check(const PointCloud& cloud,
                                        const PermTuple& pattern, int r) {
  if (pattern.arity() != cloud.k)
    throw domain_error("pattern arity must match the cloud");
  const bool avoids = !parallel_contains(tuple_from_points(cloud), pattern);
  const bool grid_has =
      matrix_contains(grid_matrix(cloud, r), build_perm_matrix(pattern));
  if (avoids && grid_has) return GridCheckVerdict::violation;
  if (!avoids && !grid_has) return GridCheckVerdict::converse_gap;
  return GridCheckVerdict::consistent;
}

McReport run_mc(int n, int k, std::int64_t trials, std::uint64_t seed,
                const McOptions& opts) {
  if (trials < 1) throw domain_error("need at least one trial");
  const PermTuple pattern =
      opts.pattern ? *opts.pattern : all_ascending_pattern(k);
  if (pattern.arity() != k)
    throw domain_error("pattern arity must match k");
  McReport report;
  report.n = n;
  report.k = k;
  report.trials = trials;
  report.seed = seed;
  report.grid_checked = opts.r.has_value();
  report.r = opts.r.value_or(0);
  const PermTuple qk_pattern = all_ascending_pattern(k);
  for (std::int64_t t = 0; t < trials; ++t) {
    const PointCloud cloud = sample_points(n, k, derive_stream(seed, static_cast<std::uint64_t>(t)));
    if (!parallel_contains(tuple_from_points(cloud), qk_pattern))
      ++report.successes;
    if (opts.r) {
      switch (grid_implication_check(cloud, pattern, *opts.r)) {
        case GridCheckVerdict::violation: ++report.violations; break;
        case GridCheckVerdict::converse_gap: ++report.converse_gaps; break;
        case GridCheckVerdict::consistent: break;
      }
    }
  }
  const double p =
      static_cast<double>(report.successes) / static_cast<double>(trials);
  report.estimate = p;
  report.stderr_ = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return report;
}

}  // namespace klazar
