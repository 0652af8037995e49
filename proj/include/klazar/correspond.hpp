#pragma once

#include <optional>
#include <vector>

#include "klazar/partition.hpp"
#include "klazar/perm.hpp"

namespace klazar {

/// The partition of (k+1)n whose i-th block is
/// {i, n+s1(i), 2n+s2(i), ..., kn+sk(i)} for the tuple (s1,...,sk).
SetPartition build_correspondent(const PermTuple& t);

/// Inverse recognition: the unique tuple with build_correspondent(result)
/// == p, or nullopt. Tries every factorization (k+1)*n = p.n with k >= 1 and
/// checks that each block holds exactly one element per window
/// {jn+1,...,(j+1)n}; uniform block sizes force k+1, so a match is unique.
std::optional<PermTuple> as_tuple(const SetPartition& p);

/// Simultaneous pattern containment: increasing indices c_1 < ... < c_m such
/// that every coordinate of the host, restricted to them, is
/// order-isomorphic to the matching coordinate of the pattern. Returns the
/// lexicographically least witness. Arities must agree.
std::optional<std::vector<int>> parallel_contains(const PermTuple& host,
                                                  const PermTuple& pattern);

/// Halving of a partition of even n: the induced partitions on the lower and
/// upper halves plus the pairing of half-blocks that came from one original
/// block. matched_left / matched_right are increasing 0-based block indices
/// into left / right; matching sends the i-th matched left block to the
/// matching(i+1)-th matched right block (both sides counted in standard
/// order).
struct SplitDecomposition {
  SetPartition left;
  SetPartition right;
  std::vector<int> matched_left;
  std::vector<int> matched_right;
  Permutation matching;
};

SplitDecomposition split_decompose(const SetPartition& p);

/// Rebuilds the partition a SplitDecomposition came from.
SetPartition reassemble(const SplitDecomposition& d);

}  // namespace klazar
