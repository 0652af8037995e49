#include "klazar/stats.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "klazar/correspond.hpp"
#include "klazar/error.hpp"

namespace klazar {

std::vector<std::vector<int>> split_intervals(const IntervalSplit& split) {
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i + 1 < split.cut_points.size(); ++i) {
    std::vector<int> interval;
    for (int e = split.cut_points[i] + 1; e <= split.cut_points[i + 1]; ++e)
      interval.push_back(e);
    out.push_back(std::move(interval));
  }
  return out;
}

std::vector<std::vector<int>> split_intervals(const IntervalSplit& split,
                                              const SetPartition& p) {
  auto out = split_intervals(split);
  for (auto& interval : out)
    for (int& e : interval) e = p.label_of(e);
  return out;
}

namespace {

struct ThicknessEntry {
  int value = 0;
  std::vector<int> certificate;
};

// value first, then the smallest certificate (by size, then lexicographic).
bool entry_better(const ThicknessEntry& a, const ThicknessEntry& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.certificate.size() != b.certificate.size())
    return a.certificate.size() < b.certificate.size();
  return a.certificate < b.certificate;
}

struct StateKey {
  int pos;
  std::uint64_t used;
  bool operator==(const StateKey& o) const {
    return pos == o.pos && used == o.used;
  }
};

struct StateKeyHash {
  size_t operator()(const StateKey& k) const {
    return std::hash<std::uint64_t>()(k.used * 0x9E3779B97F4A7C15ull +
                                      static_cast<std::uint64_t>(k.pos));
  }
};

class ThicknessSolver {
 public:
  explicit ThicknessSolver(const SetPartition& p) : p_(p) {
    const int n = p.n();
    // alive_[pos]: blocks with an element >= pos; a used block outside this
    // set can never conflict again, so it is dropped from the memo key.
    alive_.assign(static_cast<size_t>(n) + 2, 0);
    for (int b = 0; b < p.block_count(); ++b) {
      const int last = p.blocks()[static_cast<size_t>(b)].back();
      for (int pos = 1; pos <= last; ++pos)
        alive_[static_cast<size_t>(pos)] |= std::uint64_t{1} << b;
    }
  }

  ThicknessEntry solve() { return best_from(1, 0); }

 private:
  ThicknessEntry best_from(int pos, std::uint64_t used) {
    const int n = p_.n();
    if (pos > n) return {};
    const std::uint64_t norm = used & alive_[static_cast<size_t>(pos)];
    const StateKey key{pos, norm};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    ThicknessEntry best = best_from(pos + 1, norm);
    const int b = p_.block_of(pos);
    if (!(norm >> b & 1)) {
      const auto& elems = p_.blocks()[static_cast<size_t>(b)];
      const auto first = std::lower_bound(elems.begin(), elems.end(), pos);
      for (auto it = first; it != elems.end(); ++it) {
        const int weight = static_cast<int>(it - first);  // count - 1
        ThicknessEntry sub =
            best_from(*it + 1, norm | (std::uint64_t{1} << b));
        ThicknessEntry cand;
        cand.value = weight + sub.value;
        cand.certificate.assign(first, it + 1);
        cand.certificate.insert(cand.certificate.end(),
                                sub.certificate.begin(),
                                sub.certificate.end());
        if (entry_better(cand, best)) best = std::move(cand);
      }
    }
    memo_.emplace(key, best);
    return best;
  }

  const SetPartition& p_;
  std::vector<std::uint64_t> alive_;
  std::unordered_map<StateKey, ThicknessEntry, StateKeyHash> memo_;
};

}  // namespace

ThicknessResult thickness(const SetPartition& p) {
  if (p.n() == 0)
    throw domain_error("thickness is undefined for the empty partition");
  if (p.n() > 64)
    throw guard_error("thickness solver is limited to n <= 64");
  ThicknessEntry best = ThicknessSolver(p).solve();
  ThicknessResult out;
  out.value = best.value;
  // Rank 0 is realized by any single element; report the smallest so the
  // certificate always names a valid layered restriction.
  out.certificate = best.value == 0 ? std::vector<int>{1}
                                    : std::move(best.certificate);
  for (int& e : out.certificate) e = p.label_of(e);
  return out;
}

PermutabilityResult permutability(const SetPartition& p) {
  const int n = p.n();
  if (n == 0)
    throw domain_error("permutability is undefined for the empty partition");
  PermutabilityResult out;
  out.split.cut_points.push_back(0);
  std::vector<char> in_interval(static_cast<size_t>(p.block_count()), 0);
  for (int e = 1; e <= n; ++e) {
    const int b = p.block_of(e);
    if (in_interval[static_cast<size_t>(b)]) {
      out.split.cut_points.push_back(e - 1);
      std::fill(in_interval.begin(), in_interval.end(), 0);
    }
    in_interval[static_cast<size_t>(b)] = 1;
  }
  out.split.cut_points.push_back(n);
  out.value = out.split.interval_count() - 1;
  return out;
}

int thickness_oracle(const SetPartition& p) {
  const int n = p.n();
  if (n == 0)
    throw domain_error("thickness is undefined for the empty partition");
  if (n > 12) throw guard_error("thickness_oracle is guarded to n <= 12");
  int best = 0;
  const SetPartition pc = p.canonical();
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<int> subset;
    for (int e = 1; e <= n; ++e)
      if (mask >> (e - 1) & 1) subset.push_back(e);
    const SetPartition induced = restrict_to(pc, subset);
    if (is_layered(induced)) best = std::max(best, rank(induced));
  }
  return best;
}

std::optional<int> permutability_oracle(const SetPartition& p, int k_max,
                                        bool override_guards) {
  const int n = p.n();
  if (n == 0)
    throw domain_error("permutability is undefined for the empty partition");
  const int b = p.block_count();
  if (!override_guards && (n > 7 || b > 4 || k_max > 3))
    throw guard_error(
        "permutability_oracle is guarded to n <= 7, blocks <= 4, k_max <= 3");

  if (b == n) return 0;  // all singletons: contained in a singleton partition
  for (int k = 1; k <= k_max; ++k) {
    // Odometer over all k-tuples of permutations of [b].
    std::vector<std::vector<int>> images(
        static_cast<size_t>(k), Permutation::identity(b).images());
    while (true) {
      std::vector<Permutation> perms;
      perms.reserve(static_cast<size_t>(k));
      for (const auto& img : images) perms.emplace_back(img);
      if (contains(build_correspondent(PermTuple(std::move(perms))), p))
        return k;
      int pos = k - 1;
      while (pos >= 0 && !std::next_permutation(images[static_cast<size_t>(pos)]
                                                    .begin(),
                                                images[static_cast<size_t>(pos)]
                                                    .end()))
        --pos;
      if (pos < 0) break;
    }
  }
  return std::nullopt;
}

}  // namespace klazar
