#pragma once

#include <optional>
#include <vector>

#include "klazar/partition.hpp"

namespace klazar {

/// Division of [m] into consecutive intervals via cut points
/// 0 = a_0 <= a_1 <= ... <= a_{k+1} = m; interval i is (a_i, a_{i+1}].
/// For a feasible split every interval holds at most one element per block.
struct IntervalSplit {
  std::vector<int> cut_points;

  int interval_count() const {
    return static_cast<int>(cut_points.size()) - 1;
  }
};

/// Elements of each interval, in order (for reports).
std::vector<std::vector<int>> split_intervals(const IntervalSplit& split);

/// Same, written in the partition's label space.
std::vector<std::vector<int>> split_intervals(const IntervalSplit& split,
                                              const SetPartition& p);

struct ThicknessResult {
  int value = 0;
  std::vector<int> certificate;  // elements whose restriction is layered
};

struct PermutabilityResult {
  int value = 0;
  IntervalSplit split;
};

/// Maximum rank over layered restrictions of p. A restriction is layered
/// exactly when the per-block hulls of the selected elements are pairwise
/// disjoint intervals, so the search is over families of disjoint windows
/// [a,b] (a,b in block B, selecting all of B inside), at most one window per
/// block. Exact dynamic program over (position, used-blocks-crossing-here);
/// the certificate is the smallest maximizer (by size, then lexicographic).
ThicknessResult thickness(const SetPartition& p);

/// (Minimum number of feasible consecutive intervals covering [m]) - 1.
/// Left-to-right greedy: a new interval opens exactly when the next
/// element's block already occurs in the current one. Feasibility is closed
/// under taking sub-intervals, so the leftmost-maximal greedy split is a
/// minimum split (a shorter split would need some interval to properly
/// contain a maximal greedy one).
PermutabilityResult permutability(const SetPartition& p);

/// Exhaustive maximum of rank(restrict(p, S)) over layered restrictions;
/// guard p.n <= 12.
int thickness_oracle(const SetPartition& p);

/// Minimum k <= k_max such that some k-tuple over S_b (b = block count)
/// yields a correspondent partition containing p, straight from the
/// definition; witnesses with degree b always suffice when any exist.
/// Returns nullopt when no k <= k_max works. Guards (n <= 7, b <= 4,
/// k_max <= 3) unless overridden.
std::optional<int> permutability_oracle(const SetPartition& p, int k_max,
                                        bool override_guards = false);

}  // namespace klazar
