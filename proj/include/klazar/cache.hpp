#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "klazar/enumerate.hpp"

namespace klazar {

struct CacheEntry {
  std::string pattern;
  int n = 0;
  std::optional<int> m;
  std::string count_decimal;
  std::string method;
  std::string engine;  // engine_version the count was produced with
};

/// Plain JSON file cache of count results, keyed by (pattern, n, m, engine
/// version). Stores are atomic (write temp, then rename). A cache that
/// cannot be read or written degrades to a no-op with a warning; it never
/// blocks the computation.
class SequenceCache {
 public:
  SequenceCache() = default;  // disabled
  explicit SequenceCache(std::filesystem::path dir,
                         std::string engine = std::string(engine_version));

  bool enabled() const { return enabled_; }
  const std::string& warning() const { return warning_; }
  std::filesystem::path file_path() const;

  /// Only entries recorded under the current engine version match.
  std::optional<CacheEntry> lookup(const std::string& pattern, int n,
                                   std::optional<int> m) const;
  void store(const CacheEntry& entry);
  const std::vector<CacheEntry>& entries() const { return entries_; }
  void clear();

 private:
  void load();
  void persist();

  std::filesystem::path dir_;
  std::string engine_;
  bool enabled_ = false;
  std::string warning_;
  std::vector<CacheEntry> entries_;
};

}  // namespace klazar
