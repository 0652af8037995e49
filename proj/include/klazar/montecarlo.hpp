#pragma once

#include <cstdint>
#include <optional>

#include "klazar/matrix.hpp"
#include "klazar/perm.hpp"
#include "klazar/points.hpp"

namespace klazar {

/// n i.i.d. uniform points of [0,1)^(k+1); deterministic for a given seed.
/// If any coordinate axis collides (possible in floating point, probability
/// ~0) the whole cloud is resampled from the next sub-stream.
PointCloud sample_points(int n, int k, std::uint64_t seed);

/// Sort the points by first coordinate; coordinate i+1 read along that order
/// gives permutation i as the ranks of its values.
PermTuple tuple_from_points(const PointCloud& cloud);

struct Estimate {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;  // sqrt(p(1-p)/trials)
};

/// Fraction of sampled clouds whose induced tuple avoids (12,...,12) in
/// parallel — equivalently, whose dominance order is an antichain. Trial t
/// uses the sub-stream derive_stream(seed, t), so any execution order gives
/// the same estimate.
Estimate estimate_qk(int n, int k, std::int64_t trials, std::uint64_t seed);

/// True iff no two points are coordinate-wise strictly comparable.
bool antichain_check(const PointCloud& cloud);

enum class GridCheckVerdict {
  consistent,
  violation,      // tuple avoids the pattern but the grid matrix contains it
  converse_gap,   // tuple contains the pattern, grid matrix avoids it anyway
};

/// Evaluates both sides of the avoidance-implies-grid-avoidance implication
/// on one cloud. `violation` must never come back; `converse_gap` is
/// expected occasionally (two witness points can share a box).
GridCheckVerdict grid_implication_check(const PointCloud& cloud,
                                        const PermTuple& pattern, int r);

struct McOptions {
  std::optional<int> r;               // run the grid check at this resolution
  std::optional<PermTuple> pattern;   // defaults to (12,...,12) of arity k
};

struct McReport {
  int n = 0;
  int k = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::int64_t successes = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::int64_t violations = 0;
  std::int64_t converse_gaps = 0;
  bool grid_checked = false;
  int r = 0;
};

/// One pass over `trials` clouds: q_k tallies plus, when r is set, the grid
/// implication check against the chosen pattern.
McReport run_mc(int n, int k, std::int64_t trials, std::uint64_t seed,
                const McOptions& opts = {});

}  // namespace klazar
