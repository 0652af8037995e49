#include "klazar/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "klazar/error.hpp"
#include "klazar/stats.hpp"

namespace klazar {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// Does the partial partition (elements 1..j, block ids in blk[1..j]) contain
// the pattern with a witness using position j? Pattern element m is pinned to
// j; the rest go to increasing positions below it. Because prefixes are only
// extended while pattern-free, this anchored test is a full containment test.
bool anchored_contains(const std::vector<int>& blk, int j,
                       const SetPartition& pattern) {
  const int m = pattern.n();
  if (m == 0) return true;
  if (m > j) return false;
  if (m == 1) return true;
  std::vector<int> pos(static_cast<size_t>(m - 1), 0);
  // Depth-first over positions for pattern elements 1..m-1.
  int depth = 0;
  int candidate = 1;
  while (true) {
    bool placed = false;
    for (int p = candidate; p <= j - (m - 1 - depth); ++p) {
      bool ok = pattern.same_block(depth + 1, m) == (blk[static_cast<size_t>(p)] ==
                                                     blk[static_cast<size_t>(j)]);
      for (int q = 0; ok && q < depth; ++q)
        ok = pattern.same_block(q + 1, depth + 1) ==
             (blk[static_cast<size_t>(pos[static_cast<size_t>(q)])] ==
              blk[static_cast<size_t>(p)]);
      if (!ok) continue;
      pos[static_cast<size_t>(depth)] = p;
      placed = true;
      break;
    }
    if (placed) {
      if (depth == m - 2) return true;
      ++depth;
      candidate = pos[static_cast<size_t>(depth - 1)] + 1;
    } else {
      if (depth == 0) return false;
      --depth;
      candidate = pos[static_cast<size_t>(depth)] + 1;
    }
  }
}

struct PrefixTask {
  std::vector<int> blk;  // indices 0..depth filled (slot 0 unused)
  int used = 0;
};

class RgsCounter {
 public:
  RgsCounter(const SetPartition& pattern, int n, std::optional<int> m)
      : pattern_(pattern), n_(n), m_(m) {}

  BigInt run(int workers, int split_depth) {
    if (n_ == 0) {
      const bool empty_ok = pattern_.n() >= 1 && (!m_ || *m_ == 0);
      return empty_ok ? 1 : 0;
    }
    if (pattern_.n() == 0) return 0;  // everything contains the empty pattern
    std::vector<int> blk(static_cast<size_t>(n_) + 1, -1);
    const int depth = std::clamp(split_depth, 1, n_);
    if (workers <= 1) return count_from(blk, 1, 0);

    std::vector<PrefixTask> tasks;
    collect_prefixes(blk, 1, 0, depth, tasks);
    std::vector<BigInt> results(tasks.size());
    std::atomic<size_t> next{0};
    auto drain = [&] {
      while (true) {
        const size_t t = next.fetch_add(1);
        if (t >= tasks.size()) break;
        std::vector<int> local = tasks[t].blk;
        local.resize(static_cast<size_t>(n_) + 1, -1);
        results[t] = count_from(local, depth + 1, tasks[t].used);
      }
    };
    std::vector<std::thread> pool;
    const int w = std::min<int>(workers, static_cast<int>(tasks.size()));
    pool.reserve(static_cast<size_t>(std::max(0, w - 1)));
    for (int i = 1; i < w; ++i) pool.emplace_back(drain);
    drain();
    for (auto& th : pool) th.join();
    BigInt total = 0;
    for (const auto& r : results) total += r;  // fixed order, schedule-free
    return total;
  }

 private:
  bool block_budget_dead(int j, int used) const {
    if (!m_) return false;
    if (used > *m_) return true;
    return used + (n_ - j + 1) < *m_;  // every further element adds <= 1 block
  }

  BigInt count_from(std::vector<int>& blk, int j, int used) {
    if (j > n_) return !m_ || used == *m_ ? 1 : 0;
    if (block_budget_dead(j, used)) return 0;
    BigInt total = 0;
    for (int t = 0; t <= used && t < n_; ++t) {
      blk[static_cast<size_t>(j)] = t;
      if (anchored_contains(blk, j, pattern_)) continue;
      total += count_from(blk, j + 1, std::max(used, t + 1));
    }
    blk[static_cast<size_t>(j)] = -1;
    return total;
  }

  void collect_prefixes(std::vector<int>& blk, int j, int used, int depth,
                        std::vector<PrefixTask>& out) {
    if (block_budget_dead(j, used)) return;
    if (j > depth) {
      out.push_back(PrefixTask{
          std::vector<int>(blk.begin(), blk.begin() + j), used});
      return;
    }
    for (int t = 0; t <= used && t < n_; ++t) {
      blk[static_cast<size_t>(j)] = t;
      if (anchored_contains(blk, j, pattern_)) continue;
      collect_prefixes(blk, j + 1, std::max(used, t + 1), depth, out);
    }
    blk[static_cast<size_t>(j)] = -1;
  }

  const SetPartition& pattern_;
  int n_;
  std::optional<int> m_;
};

// Unpruned route: generate every partition and test it with the subset
// oracle. Slow on purpose; it shares no search logic with the pruned engine.
BigInt oracle_count(const SetPartition& pattern, int n, std::optional<int> m) {
  if (n == 0) {
    const bool empty_ok = pattern.n() >= 1 && (!m || *m == 0);
    return empty_ok ? 1 : 0;
  }
  BigInt total = 0;
  std::vector<int> blk(static_cast<size_t>(n) + 1, -1);
  auto walk = [&](auto&& self, int j, int used) -> void {
    if (j > n) {
      if (m && used != *m) return;
      std::vector<std::vector<int>> blocks(static_cast<size_t>(used));
      for (int e = 1; e <= n; ++e)
        blocks[static_cast<size_t>(blk[static_cast<size_t>(e)])].push_back(e);
      if (!contains_bruteforce(SetPartition::standardize(std::move(blocks)),
                               pattern))
        ++total;
      return;
    }
    for (int t = 0; t <= used; ++t) {
      blk[static_cast<size_t>(j)] = t;
      self(self, j + 1, std::max(used, t + 1));
    }
  };
  walk(walk, 1, 0);
  return total;
}

void check_count_guards(int n, const CountOptions& opts) {
  if (opts.method != "pruned" && opts.method != "oracle")
    throw domain_error("unknown counting method '" + opts.method + "'");
  if (opts.override_guards) return;
  if (opts.method == "pruned" && n > opts.guard_n)
    throw guard_error("count guard: n = " + std::to_string(n) + " exceeds " +
                      std::to_string(opts.guard_n) +
                      " (raise the guard explicitly to proceed)");
  if (opts.method == "oracle" && n > opts.oracle_guard_n)
    throw guard_error("oracle count guard: n = " + std::to_string(n) +
                      " exceeds " + std::to_string(opts.oracle_guard_n));
}

}  // namespace

CountReport count_avoiders(const SetPartition& pattern, int n,
                           const CountOptions& opts) {
  if (n < 0) throw domain_error("n must be non-negative");
  check_count_guards(n, opts);
  const auto start = Clock::now();
  CountReport report;
  report.pattern = format_partition(pattern);
  report.n = n;
  report.method = opts.method;
  report.count = opts.method == "oracle"
                     ? oracle_count(pattern, n, std::nullopt)
                     : RgsCounter(pattern, n, std::nullopt)
                           .run(opts.workers, opts.split_depth);
  report.elapsed_ms = elapsed_ms_since(start);
  return report;
}

CountReport count_avoiders_by_blocks(const SetPartition& pattern, int n, int m,
                                     const CountOptions& opts) {
  if (n < 0 || m < 0 || m > n)
    throw domain_error("need 0 <= m <= n for by-block counts");
  check_count_guards(n, opts);
  const auto start = Clock::now();
  CountReport report;
  report.pattern = format_partition(pattern);
  report.n = n;
  report.m = m;
  report.method = opts.method;
  report.count = opts.method == "oracle"
                     ? oracle_count(pattern, n, m)
                     : RgsCounter(pattern, n, m)
                           .run(opts.workers, opts.split_depth);
  report.elapsed_ms = elapsed_ms_since(start);
  return report;
}

namespace {

bool tuple_avoids(const std::vector<std::vector<int>>& host,
                  const PermTuple& pattern) {
  const int k = static_cast<int>(host.size());
  const int n = static_cast<int>(host.front().size());
  const int m = pattern.degree();
  if (m > n) return true;
  std::vector<int> idx(static_cast<size_t>(m), 0);
  int depth = 0;
  int candidate = 1;
  while (true) {
    bool placed = false;
    for (int c = candidate; c <= n - (m - 1 - depth); ++c) {
      bool ok = true;
      for (int q = 0; ok && q < depth; ++q) {
        const int prev = idx[static_cast<size_t>(q)];
        for (int i = 0; i < k; ++i) {
          const bool host_up = host[static_cast<size_t>(i)]
                                   [static_cast<size_t>(prev - 1)] <
                               host[static_cast<size_t>(i)]
                                   [static_cast<size_t>(c - 1)];
          const bool pat_up = pattern[i](q + 1) < pattern[i](depth + 1);
          if (host_up != pat_up) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      idx[static_cast<size_t>(depth)] = c;
      placed = true;
      break;
    }
    if (placed) {
      if (depth == m - 1) return false;  // witness found
      ++depth;
      candidate = idx[static_cast<size_t>(depth - 1)] + 1;
    } else {
      if (depth == 0) return true;
      --depth;
      candidate = idx[static_cast<size_t>(depth)] + 1;
    }
  }
}

}  // namespace

CountReport count_parallel_avoiders(const PermTuple& pattern, int n,
                                    const TupleCountOptions& opts) {
  if (n < 1) throw domain_error("parallel counts need n >= 1");
  const int k = pattern.arity();
  const double log_tuples = k * std::lgamma(static_cast<double>(n) + 1.0);
  if (!opts.override_budget && log_tuples > std::log(opts.budget))
    throw guard_error("parallel count budget: n!^k exceeds " +
                      std::to_string(static_cast<long long>(opts.budget)));
  const auto start = Clock::now();
  std::vector<std::vector<int>> host(
      static_cast<size_t>(k), Permutation::identity(n).images());
  BigInt total = 0;
  while (true) {
    if (tuple_avoids(host, pattern)) ++total;
    int pos = k - 1;
    while (pos >= 0 &&
           !std::next_permutation(host[static_cast<size_t>(pos)].begin(),
                                  host[static_cast<size_t>(pos)].end()))
      --pos;
    if (pos < 0) break;
  }
  CountReport report;
  report.pattern = format_perm_tuple(pattern);
  report.n = n;
  report.count = total;
  report.method = "oracle";
  report.elapsed_ms = elapsed_ms_since(start);
  return report;
}

SetPartition strip_singletons(const SetPartition& p) {
  std::vector<int> keep;
  for (const auto& block : p.blocks())
    if (block.size() > 1) keep.insert(keep.end(), block.begin(), block.end());
  return restrict_to(p.canonical(), keep);
}

std::vector<SetPartition> lowerbound_construction(
    const SetPartition& pattern, int n, const ConstructionOptions& opts) {
  const int k = permutability(pattern).value;
  if (k < 2)
    throw domain_error("construction needs a pattern of permutability >= 2");
  if (n < k || n % k != 0)
    throw domain_error("n must be a positive multiple of the permutability");
  const int m = n / k;
  const BigInt expected = pow_bigint(factorial(m), k - 1);
  if (!opts.override_guards && expected > opts.guard_count)
    throw guard_error("construction guard: would emit " +
                      to_decimal(expected) + " partitions");
  std::vector<SetPartition> out;
  std::vector<std::vector<int>> images(
      static_cast<size_t>(k - 1), Permutation::identity(m).images());
  while (true) {
    std::vector<Permutation> perms;
    perms.reserve(images.size());
    for (const auto& img : images) perms.emplace_back(img);
    out.push_back(build_correspondent(PermTuple(std::move(perms))));
    int pos = k - 2;
    while (pos >= 0 &&
           !std::next_permutation(images[static_cast<size_t>(pos)].begin(),
                                  images[static_cast<size_t>(pos)].end()))
      --pos;
    if (pos < 0) break;
  }
  return out;
}

ExponentTable exponent_table(const SetPartition& pattern, int n_max,
                             const CountOptions& opts) {
  if (pattern.n() == 0)
    throw domain_error("exponent tables need a non-empty pattern");
  ExponentTable table;
  table.pm = permutability(pattern).value;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double fitted = nan;
  for (int n = 2; n <= n_max; ++n) {
    ExponentRow row;
    row.n = n;
    row.count = count_avoiders(pattern, n, opts).count;
    const double nlogn = n * std::log(static_cast<double>(n));
    row.ratio = row.count >= 1 ? log_bigint(row.count) / nlogn : nan;
    row.lower_bound_ratio = nan;
    if (table.pm >= 1 && row.count >= 1) {
      const double exponent = 1.0 - 1.0 / table.pm;
      const double log_c1 =
          (log_bigint(row.count) - n * exponent * std::log(double(n))) / n;
      if (std::isnan(fitted) || log_c1 < fitted) fitted = log_c1;
    }
    table.rows.push_back(std::move(row));
  }
  if (table.pm >= 1 && !std::isnan(fitted)) {
    table.fitted_c1 = std::exp(fitted);
    for (auto& row : table.rows) {
      if (row.count < 1) continue;
      const double logn = std::log(static_cast<double>(row.n));
      row.lower_bound_ratio = fitted / logn + (1.0 - 1.0 / table.pm);
    }
  } else {
    table.fitted_c1 = nan;
  }
  return table;
}

}  // namespace klazar
