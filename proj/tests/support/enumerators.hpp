#pragma once

// Exhaustive small-object generators shared by the test suites.

#include <algorithm>
#include <vector>

#include "klazar/partition.hpp"
#include "klazar/perm.hpp"
#include "klazar/rng.hpp"

namespace klazar::testing {

/// Every set partition of [n] (restricted-growth recursion); n = 0 yields
/// just the empty partition.
inline std::vector<SetPartition> all_partitions(int n) {
  std::vector<SetPartition> out;
  std::vector<int> blk(static_cast<size_t>(n) + 1, -1);
  auto rec = [&](auto&& self, int j, int used) -> void {
    if (j > n) {
      std::vector<std::vector<int>> blocks(static_cast<size_t>(used));
      for (int e = 1; e <= n; ++e)
        blocks[static_cast<size_t>(blk[static_cast<size_t>(e)])].push_back(e);
      out.push_back(SetPartition::standardize(std::move(blocks)));
      return;
    }
    for (int t = 0; t <= used; ++t) {
      blk[static_cast<size_t>(j)] = t;
      self(self, j + 1, std::max(used, t + 1));
    }
  };
  if (n == 0)
    out.emplace_back();
  else
    rec(rec, 1, 0);
  return out;
}

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> images(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<size_t>(i)] = i + 1;
  do {
    out.push_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

/// Every k-tuple over S_n, lexicographic.
inline std::vector<std::vector<std::vector<int>>> all_tuples(int k, int n) {
  const auto perms = all_permutations(n);
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<size_t> pick(static_cast<size_t>(k), 0);
  while (true) {
    std::vector<std::vector<int>> tuple;
    for (size_t i : pick) tuple.push_back(perms[i]);
    out.push_back(std::move(tuple));
    int pos = k - 1;
    while (pos >= 0) {
      if (++pick[static_cast<size_t>(pos)] < perms.size()) break;
      pick[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

inline PermTuple to_tuple(const std::vector<std::vector<int>>& images) {
  std::vector<Permutation> perms;
  perms.reserve(images.size());
  for (const auto& img : images) perms.emplace_back(img);
  return PermTuple(std::move(perms));
}

/// Uniform-ish random partition via a random restricted-growth string.
inline SetPartition random_partition(int n, SplitMix64& rng) {
  std::vector<std::vector<int>> blocks;
  for (int e = 1; e <= n; ++e) {
    const auto t = static_cast<size_t>(rng.next() % (blocks.size() + 1));
    if (t == blocks.size()) blocks.emplace_back();
    blocks[t].push_back(e);
  }
  return SetPartition::standardize(std::move(blocks));
}

}  // namespace klazar::testing
