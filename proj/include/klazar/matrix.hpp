#pragma once

#include <vector>

#include "klazar/bigint.hpp"
#include "klazar/perm.hpp"
#include "klazar/points.hpp"

namespace klazar {

/// d-dimensional 0-1 matrix as a dimension vector plus the sorted set of
/// one-positions (1-based coordinates). Sparse on purpose: avoiders have few
/// ones and dense d-dimensional storage explodes.
struct DMatrix {
  std::vector<int> dims;
  std::vector<std::vector<int>> ones;

  int d() const { return static_cast<int>(dims.size()); }
};

/// Validates (d >= 1, coordinates in range, positions unique) and sorts the
/// one-positions.
DMatrix make_dmatrix(std::vector<int> dims, std::vector<std::vector<int>> ones);

/// All sides equal and every axis-aligned slice holds exactly one 1.
bool is_perm_matrix(const DMatrix& m);

/// (k+1)-dimensional size-n permutation matrix with ones at
/// (i, s1(i), ..., sk(i)).
DMatrix build_perm_matrix(const PermTuple& t);

/// True iff increasing injections per dimension map every one of `pattern`
/// onto a one of `host`. Backtracking over the pattern's ones in
/// lexicographic order; partial coordinate maps are kept monotone with
/// enough room to extend to full increasing injections.
bool matrix_contains(const DMatrix& host, const DMatrix& pattern);

struct MatrixGuardOptions {
  bool override_guards = false;
};

/// Exact maximum number of ones of a d-dimensional size-r matrix avoiding
/// the permutation matrix `pattern`. Branch and bound in lexicographic
/// position order: a one is only added while the set stays avoiding, and a
/// branch dies when even taking every remaining position cannot beat the
/// incumbent. Guards d <= 3, r <= 6.
int max_ones_avoiding(const DMatrix& pattern, int r,
                      const MatrixGuardOptions& opts = {});

/// Exact count of d-dimensional size-r 0-1 matrices avoiding `pattern`.
/// DFS over positions; a partial matrix that already contains the pattern
/// kills its whole subtree. Guards r^d <= 27.
BigInt count_avoiding_matrices(const DMatrix& pattern, int r,
                               const MatrixGuardOptions& opts = {});

/// (k+1)-dimensional size-r grid snapshot of a point cloud: position
/// (i_1,...,i_{k+1}) is a one iff some point falls in the half-open box
/// prod [(i_j - 1)/r, i_j/r).
DMatrix grid_matrix(const PointCloud& cloud, int r);

}  // namespace klazar
