#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "klazar/bigint.hpp"
#include "klazar/correspond.hpp"
#include "klazar/partition.hpp"

namespace klazar {

/// Bumped whenever a counting engine changes observable behavior; the
/// sequence cache keys on it.
inline constexpr std::string_view engine_version = "1";

struct CountReport {
  std::string pattern;  // text form of the pattern
  int n = 0;
  std::optional<int> m;  // present for by-block counts
  BigInt count;
  std::string method;  // "pruned" | "oracle" | "construction"
  double elapsed_ms = 0.0;
};

struct CountOptions {
  int guard_n = 14;         // pruned engine refuses beyond this
  int oracle_guard_n = 10;  // the unpruned oracle is far more expensive
  bool override_guards = false;
  std::string method = "pruned";
  int workers = 1;
  int split_depth = 3;  // subtree fan-out depth for the worker pool
};

/// B_n(pattern): partitions of [n] avoiding the pattern. Depth-first
/// generation of restricted-growth strings; a prefix that already contains
/// the pattern is abandoned (any extension restricts back onto it). The
/// containment test is incremental: extending by element j only searches
/// witnesses whose largest position is j.
CountReport count_avoiders(const SetPartition& pattern, int n,
                           const CountOptions& opts = {});

/// S(n,m,pattern): same count restricted to exactly m blocks.
CountReport count_avoiders_by_blocks(const SetPartition& pattern, int n, int m,
                                     const CountOptions& opts = {});

struct TupleCountOptions {
  double budget = 26'000'000.0;  // cap on n!^k tuples
  bool override_budget = false;
};

/// S_n^k(pattern): k-tuples over S_n avoiding the pattern in parallel.
/// Exhaustive odometer with early-exit containment.
CountReport count_parallel_avoiders(const PermTuple& pattern, int n,
                                    const TupleCountOptions& opts = {});

/// Deletes every singleton block and relabels. Leaves permutability
/// unchanged (a feasible interval split stays feasible in both directions).
SetPartition strip_singletons(const SetPartition& p);

struct ConstructionOptions {
  BigInt guard_count = 1'000'000;
  bool override_guards = false;
};

/// With pm(pattern) = k >= 2 and n = k*m, emits the correspondent partition
/// of every (k-1)-tuple over S_m, in lexicographic tuple order: exactly
/// m!^(k-1) partitions of [n], every one avoiding the pattern by the
/// definition of permutability.
std::vector<SetPartition> lowerbound_construction(
    const SetPartition& pattern, int n, const ConstructionOptions& opts = {});

struct ExponentRow {
  int n = 0;
  BigInt count;
  double ratio = 0.0;             // log(count) / (n log n); NaN when count = 0
  double lower_bound_ratio = 0.0; // same ratio for fitted_c1^n * n^(n(1-1/pm))
};

struct ExponentTable {
  int pm = 0;
  double fitted_c1 = 0.0;  // largest c with c^n * n^(n(1-1/pm)) <= count on all rows
  std::vector<ExponentRow> rows;
};

/// Exact counts and normalized log-ratios for n = 2..n_max. Reports the
/// observed data only; no asymptotic claim is made.
ExponentTable exponent_table(const SetPartition& pattern, int n_max,
                             const CountOptions& opts = {});

}  // namespace klazar
