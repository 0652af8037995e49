#include "klazar/correspond.hpp"

#include <algorithm>

#include "klazar/error.hpp"

namespace klazar {

SetPartition build_correspondent(const PermTuple& t) {
  const int n = t.degree();
  const int k = t.arity();
  std::vector<std::vector<int>> blocks(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    auto& block = blocks[static_cast<size_t>(i - 1)];
    block.push_back(i);
    for (int j = 0; j < k; ++j) block.push_back((j + 1) * n + t[j](i));
  }
  return SetPartition::standardize(std::move(blocks));
}

std::optional<PermTuple> as_tuple(const SetPartition& p) {
  const int total = p.n();
  if (total == 0 || p.block_count() == 0) return std::nullopt;
  // Every block must have the same size k+1 >= 2, which fixes n.
  const int block_size = static_cast<int>(p.blocks().front().size());
  if (block_size < 2) return std::nullopt;
  for (const auto& block : p.blocks())
    if (static_cast<int>(block.size()) != block_size) return std::nullopt;
  if (total % block_size != 0) return std::nullopt;
  const int n = total / block_size;
  const int k = block_size - 1;
  if (p.block_count() != n) return std::nullopt;
  // Window j is {jn+1, ..., (j+1)n}; each block needs one element per window,
  // and the window-0 elements must be exactly 1..n in block order.
  std::vector<std::vector<int>> images(static_cast<size_t>(k),
                                       std::vector<int>(static_cast<size_t>(n)));
  for (int b = 0; b < n; ++b) {
    const auto& block = p.blocks()[static_cast<size_t>(b)];
    for (int j = 0; j <= k; ++j) {
      const int e = block[static_cast<size_t>(j)];
      if (e <= j * n || e > (j + 1) * n) return std::nullopt;
      if (j == 0) {
        if (e != b + 1) return std::nullopt;
      } else {
        images[static_cast<size_t>(j - 1)][static_cast<size_t>(b)] = e - j * n;
      }
    }
  }
  std::vector<Permutation> perms;
  perms.reserve(static_cast<size_t>(k));
  for (auto& img : images) perms.emplace_back(std::move(img));
  return PermTuple(std::move(perms));
}

namespace {

bool tuple_assign_from(const PermTuple& host, const PermTuple& pattern,
                       std::vector<int>& idx, int next) {
  const int m = pattern.degree();
  const int n = host.degree();
  const int k = host.arity();
  if (next == m) return true;
  const int start = next == 0 ? 1 : idx[static_cast<size_t>(next - 1)] + 1;
  for (int c = start; c <= n - (m - next - 1); ++c) {
    bool ok = true;
    for (int j = 0; j < next && ok; ++j) {
      for (int i = 0; i < k; ++i) {
        const bool host_up = host[i](idx[static_cast<size_t>(j)]) < host[i](c);
        const bool pat_up = pattern[i](j + 1) < pattern[i](next + 1);
        if (host_up != pat_up) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    idx[static_cast<size_t>(next)] = c;
    if (tuple_assign_from(host, pattern, idx, next + 1)) return true;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> parallel_contains(const PermTuple& host,
                                                  const PermTuple& pattern) {
  if (host.arity() != pattern.arity())
    throw domain_error("parallel containment needs equal arity");
  if (pattern.degree() > host.degree()) return std::nullopt;
  std::vector<int> idx(static_cast<size_t>(pattern.degree()), 0);
  if (tuple_assign_from(host, pattern, idx, 0)) return idx;
  return std::nullopt;
}

SplitDecomposition split_decompose(const SetPartition& p_in) {
  const SetPartition p = p_in.canonical();  // halving happens in rank space
  const int n = p.n();
  if (n == 0 || n % 2 != 0)
    throw domain_error("split decomposition needs even n >= 2");
  const int half = n / 2;

  std::vector<int> lower, upper;
  for (int e = 1; e <= half; ++e) lower.push_back(e);
  for (int e = half + 1; e <= n; ++e) upper.push_back(e);
  SplitDecomposition d;
  d.left = restrict_to(p, lower);
  d.right = restrict_to(p, upper);

  // A block crossing the boundary contributes its minimum to the left part
  // and its smallest upper element to the right part; those representatives
  // identify the induced blocks (restriction keeps relative ranks: e on the
  // left stays e, e on the right becomes e - half).
  std::vector<std::pair<int, int>> pairs;  // (left block idx, right block idx)
  for (const auto& block : p.blocks()) {
    if (block.front() > half || block.back() <= half) continue;
    const int left_rep = block.front();
    const int right_rep =
        *std::upper_bound(block.begin(), block.end(), half) - half;
    pairs.emplace_back(d.left.block_of(left_rep), d.right.block_of(right_rep));
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<int> right_sorted;
  for (const auto& pr : pairs) {
    d.matched_left.push_back(pr.first);
    right_sorted.push_back(pr.second);
  }
  std::sort(right_sorted.begin(), right_sorted.end());
  d.matched_right = right_sorted;
  std::vector<int> images;
  for (const auto& pr : pairs) {
    const auto it =
        std::lower_bound(right_sorted.begin(), right_sorted.end(), pr.second);
    images.push_back(static_cast<int>(it - right_sorted.begin()) + 1);
  }
  d.matching = Permutation(std::move(images));
  return d;
}

SetPartition reassemble(const SplitDecomposition& d) {
  const int half = d.left.n();
  std::vector<std::vector<int>> blocks;
  std::vector<int> left_slot(static_cast<size_t>(d.left.block_count()), -1);
  std::vector<int> right_slot(static_cast<size_t>(d.right.block_count()), -1);
  for (size_t i = 0; i < d.matched_left.size(); ++i) {
    const int lb = d.matched_left[i];
    const int rb = d.matched_right[static_cast<size_t>(d.matching(
                       static_cast<int>(i) + 1) - 1)];
    blocks.push_back(d.left.blocks()[static_cast<size_t>(lb)]);
    for (int e : d.right.blocks()[static_cast<size_t>(rb)])
      blocks.back().push_back(e + half);
    left_slot[static_cast<size_t>(lb)] = 0;
    right_slot[static_cast<size_t>(rb)] = 0;
  }
  for (int b = 0; b < d.left.block_count(); ++b)
    if (left_slot[static_cast<size_t>(b)] < 0)
      blocks.push_back(d.left.blocks()[static_cast<size_t>(b)]);
  for (int b = 0; b < d.right.block_count(); ++b)
    if (right_slot[static_cast<size_t>(b)] < 0) {
      blocks.emplace_back();
      for (int e : d.right.blocks()[static_cast<size_t>(b)])
        blocks.back().push_back(e + half);
    }
  return SetPartition::standardize(std::move(blocks));
}

}  // namespace klazar
