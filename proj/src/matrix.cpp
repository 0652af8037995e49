#include "klazar/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "klazar/error.hpp"

namespace klazar {

DMatrix make_dmatrix(std::vector<int> dims, std::vector<std::vector<int>> ones) {
  if (dims.empty()) throw domain_error("matrix needs dimension >= 1");
  for (int side : dims)
    if (side < 1) throw domain_error("matrix sides must be positive");
  for (const auto& pos : ones) {
    if (pos.size() != dims.size())
      throw domain_error("one-position arity differs from dimension");
    for (size_t i = 0; i < pos.size(); ++i)
      if (pos[i] < 1 || pos[i] > dims[i])
        throw domain_error("one-position out of range");
  }
  std::sort(ones.begin(), ones.end());
  if (std::adjacent_find(ones.begin(), ones.end()) != ones.end())
    throw domain_error("duplicate one-position");
  return DMatrix{std::move(dims), std::move(ones)};
}

bool is_perm_matrix(const DMatrix& m) {
  const int n = m.dims.front();
  for (int side : m.dims)
    if (side != n) return false;
  if (static_cast<int>(m.ones.size()) != n) return false;
  for (int axis = 0; axis < m.d(); ++axis) {
    std::vector<int> hits(static_cast<size_t>(n) + 1, 0);
    for (const auto& pos : m.ones) ++hits[static_cast<size_t>(pos[static_cast<size_t>(axis)])];
    for (int v = 1; v <= n; ++v)
      if (hits[static_cast<size_t>(v)] != 1) return false;
  }
  return true;
}

DMatrix build_perm_matrix(const PermTuple& t) {
  const int n = t.degree();
  const int d = t.arity() + 1;
  std::vector<std::vector<int>> ones;
  ones.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    std::vector<int> pos(static_cast<size_t>(d));
    pos[0] = i;
    for (int j = 1; j < d; ++j) pos[static_cast<size_t>(j)] = t[j - 1](i);
    ones.push_back(std::move(pos));
  }
  return make_dmatrix(std::vector<int>(static_cast<size_t>(d), n),
                      std::move(ones));
}

namespace {

// One partial coordinate map per dimension. An increasing injection
// [p] -> [q] extending the map exists iff every neighbor gap is wide enough
// and both boundaries leave room, so insertion checks are purely local.
class InjectionMaps {
 public:
  InjectionMaps(const std::vector<int>& pattern_dims,
                const std::vector<int>& host_dims)
      : pattern_dims_(pattern_dims),
        host_dims_(host_dims),
        maps_(pattern_dims.size()) {}

  // Returns the axes actually inserted (for undo), or nullopt on conflict.
  std::optional<std::vector<int>> push(const std::vector<int>& pat_pos,
                                       const std::vector<int>& host_pos) {
    std::vector<int> inserted;
    for (int axis = 0; axis < static_cast<int>(maps_.size()); ++axis) {
      const int v = pat_pos[static_cast<size_t>(axis)];
      const int x = host_pos[static_cast<size_t>(axis)];
      auto& map = maps_[static_cast<size_t>(axis)];
      const auto it = map.find(v);
      if (it != map.end()) {
        if (it->second != x) {
          pop_axes(pat_pos, host_pos, inserted);
          return std::nullopt;
        }
        continue;
      }
      if (!fits(axis, v, x)) {
        pop_axes(pat_pos, host_pos, inserted);
        return std::nullopt;
      }
      map.emplace(v, x);
      inserted.push_back(axis);
    }
    return inserted;
  }

  void pop(const std::vector<int>& pat_pos, const std::vector<int>& inserted) {
    for (int axis : inserted)
      maps_[static_cast<size_t>(axis)].erase(pat_pos[static_cast<size_t>(axis)]);
  }

 private:
  void pop_axes(const std::vector<int>& pat_pos, const std::vector<int>&,
                const std::vector<int>& inserted) {
    pop(pat_pos, inserted);
  }

  bool fits(int axis, int v, int x) const {
    const auto& map = maps_[static_cast<size_t>(axis)];
    const int p = pattern_dims_[static_cast<size_t>(axis)];
    const int q = host_dims_[static_cast<size_t>(axis)];
    auto after = map.upper_bound(v);
    if (after != map.end()) {
      if (x >= after->second || after->second - x < after->first - v)
        return false;
    } else if (q - x < p - v) {
      return false;
    }
    if (after != map.begin()) {
      auto before = std::prev(after);
      if (x <= before->second || x - before->second < v - before->first)
        return false;
    } else if (x < v) {
      return false;
    }
    return true;
  }

  const std::vector<int>& pattern_dims_;
  const std::vector<int>& host_dims_;
  std::vector<std::map<int, int>> maps_;
};

bool embed_from(const DMatrix& host, const DMatrix& pattern, InjectionMaps& maps,
                size_t next, size_t host_start, int forced_host_one) {
  if (next == pattern.ones.size())
    return forced_host_one < 0;  // forced one must have been consumed
  if (forced_host_one >= 0 && host_start > static_cast<size_t>(forced_host_one))
    return false;  // witness indices increase, so the forced one is gone
  for (size_t h = host_start; h < host.ones.size(); ++h) {
    if (host.ones.size() - h < pattern.ones.size() - next) break;
    auto inserted = maps.push(pattern.ones[next], host.ones[h]);
    if (!inserted) continue;
    const bool was_forced = static_cast<int>(h) == forced_host_one;
    if (embed_from(host, pattern, maps, next + 1, h + 1,
                   was_forced ? -1 : forced_host_one))
      return true;
    maps.pop(pattern.ones[next], *inserted);
  }
  return false;
}

bool contains_impl(const DMatrix& host, const DMatrix& pattern,
                   int forced_host_one) {
  if (host.d() != pattern.d())
    throw domain_error("matrix containment needs equal dimension");
  for (int axis = 0; axis < host.d(); ++axis)
    if (pattern.dims[static_cast<size_t>(axis)] >
        host.dims[static_cast<size_t>(axis)])
      return false;
  if (pattern.ones.empty()) return forced_host_one < 0;
  if (pattern.ones.size() > host.ones.size()) return false;
  InjectionMaps maps(pattern.dims, host.dims);
  return embed_from(host, pattern, maps, 0, 0, forced_host_one);
}

}  // namespace

bool matrix_contains(const DMatrix& host, const DMatrix& pattern) {
  return contains_impl(host, pattern, -1);
}

namespace {

void check_matrix_guards(const DMatrix& pattern, int r, bool max_ones,
                         const MatrixGuardOptions& opts) {
  if (!is_perm_matrix(pattern))
    throw domain_error("the avoided matrix must be a permutation matrix");
  if (r < 1) throw domain_error("matrix side must be >= 1");
  if (opts.override_guards) return;
  if (max_ones) {
    if (pattern.d() > 3 || r > 6)
      throw guard_error("max-ones search is guarded to d <= 3, r <= 6");
  } else {
    double cells = std::pow(static_cast<double>(r), pattern.d());
    if (cells > 27.0)
      throw guard_error("avoider count is guarded to r^d <= 27");
  }
}

std::vector<std::vector<int>> all_positions(int d, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> pos(static_cast<size_t>(d), 1);
  while (true) {
    out.push_back(pos);
    int axis = d - 1;
    while (axis >= 0 && pos[static_cast<size_t>(axis)] == r) {
      pos[static_cast<size_t>(axis)] = 1;
      --axis;
    }
    if (axis < 0) break;
    ++pos[static_cast<size_t>(axis)];
  }
  return out;
}

// Did adding the last one (host.ones index `idx`) create a containment?
// Earlier ones were avoiding, so any witness must use it.
bool creates_containment(const DMatrix& host, const DMatrix& pattern, int idx) {
  return contains_impl(host, pattern, idx);
}

struct MaxOnesSearch {
  const DMatrix& pattern;
  const std::vector<std::vector<int>>& positions;
  DMatrix current;
  int best = 0;

  void run(size_t i) {
    const int cur = static_cast<int>(current.ones.size());
    if (cur + static_cast<int>(positions.size() - i) <= best) return;
    if (i == positions.size()) {
      best = std::max(best, cur);
      return;
    }
    // Positions arrive in lexicographic order, so appending keeps the
    // one-set sorted.
    current.ones.push_back(positions[i]);
    const bool still_avoids = !creates_containment(
        current, pattern, static_cast<int>(current.ones.size()) - 1);
    if (still_avoids) run(i + 1);
    current.ones.pop_back();
    run(i + 1);
  }
};

}  // namespace

int max_ones_avoiding(const DMatrix& pattern, int r,
                      const MatrixGuardOptions& opts) {
  check_matrix_guards(pattern, r, true, opts);
  const int d = pattern.d();
  const auto positions = all_positions(d, r);
  if (pattern.dims.front() > r)
    return static_cast<int>(positions.size());  // nothing can contain it
  MaxOnesSearch search{pattern, positions,
                       DMatrix{std::vector<int>(static_cast<size_t>(d), r), {}},
                       0};
  // Greedy incumbent: keeps the bound tight from the start.
  DMatrix greedy{search.current.dims, {}};
  for (const auto& pos : positions) {
    greedy.ones.push_back(pos);
    if (creates_containment(greedy, pattern,
                            static_cast<int>(greedy.ones.size()) - 1))
      greedy.ones.pop_back();
  }
  search.best = static_cast<int>(greedy.ones.size());
  search.run(0);
  return search.best;
}

BigInt count_avoiding_matrices(const DMatrix& pattern, int r,
                               const MatrixGuardOptions& opts) {
  check_matrix_guards(pattern, r, false, opts);
  const int d = pattern.d();
  const auto positions = all_positions(d, r);
  if (pattern.dims.front() > r)
    return pow_bigint(2, static_cast<int>(positions.size()));
  DMatrix current{std::vector<int>(static_cast<size_t>(d), r), {}};
  BigInt total = 0;
  auto walk = [&](auto&& self, size_t i) -> void {
    if (i == positions.size()) {
      ++total;
      return;
    }
    self(self, i + 1);  // leave position i at zero
    current.ones.push_back(positions[i]);
    if (!creates_containment(current, pattern,
                             static_cast<int>(current.ones.size()) - 1))
      self(self, i + 1);
    current.ones.pop_back();
  };
  walk(walk, 0);
  return total;
}

DMatrix grid_matrix(const PointCloud& cloud, int r) {
  if (r < 1) throw domain_error("grid resolution must be >= 1");
  const int d = cloud.k + 1;
  std::set<std::vector<int>> boxes;
  for (const auto& point : cloud.points) {
    std::vector<int> box(static_cast<size_t>(d));
    for (int axis = 0; axis < d; ++axis) {
      const int idx =
          static_cast<int>(std::floor(point[static_cast<size_t>(axis)] * r)) + 1;
      box[static_cast<size_t>(axis)] = std::clamp(idx, 1, r);
    }
    boxes.insert(std::move(box));
  }
  return make_dmatrix(std::vector<int>(static_cast<size_t>(d), r),
                      std::vector<std::vector<int>>(boxes.begin(), boxes.end()));
}

}  // namespace klazar
