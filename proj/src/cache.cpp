#include "klazar/cache.hpp"

#include <fstream>
#include <system_error>

#include "json.hpp"

namespace klazar {

namespace {
constexpr const char* kFileName = "klazar-cache.json";
}

SequenceCache::SequenceCache(std::filesystem::path dir, std::string engine)
    : dir_(std::move(dir)), engine_(std::move(engine)), enabled_(true) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_)) {
    enabled_ = false;
    warning_ = "cache disabled: cannot use directory " + dir_.string();
    return;
  }
  load();
}

std::filesystem::path SequenceCache::file_path() const {
  return dir_ / kFileName;
}

void SequenceCache::load() {
  std::ifstream in(file_path());
  if (!in.good()) return;  // no cache yet
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("entries") ||
      !doc["entries"].is_array()) {
    warning_ = "cache file is corrupted; treating it as empty";
    return;
  }
  for (const auto& e : doc["entries"]) {
    if (!e.is_object() || !e.contains("pattern") || !e.contains("n") ||
        !e.contains("count") || !e.contains("method") || !e.contains("engine")) {
      warning_ = "cache file has malformed entries; skipping them";
      continue;
    }
    CacheEntry entry;
    entry.pattern = e["pattern"].get<std::string>();
    entry.n = e["n"].get<int>();
    if (e.contains("m") && !e["m"].is_null()) entry.m = e["m"].get<int>();
    entry.count_decimal = e["count"].get<std::string>();
    entry.method = e["method"].get<std::string>();
    entry.engine = e["engine"].get<std::string>();
    entries_.push_back(std::move(entry));
  }
}

std::optional<CacheEntry> SequenceCache::lookup(const std::string& pattern,
                                                int n,
                                                std::optional<int> m) const {
  if (!enabled_) return std::nullopt;
  for (const auto& e : entries_)
    if (e.engine == engine_ && e.pattern == pattern && e.n == n && e.m == m)
      return e;
  return std::nullopt;
}

void SequenceCache::store(const CacheEntry& entry) {
  if (!enabled_) return;
  for (auto& e : entries_) {
    if (e.engine == entry.engine && e.pattern == entry.pattern &&
        e.n == entry.n && e.m == entry.m) {
      e = entry;
      persist();
      return;
    }
  }
  entries_.push_back(entry);
  persist();
}

void SequenceCache::clear() {
  entries_.clear();
  std::error_code ec;
  std::filesystem::remove(file_path(), ec);
}

void SequenceCache::persist() {
  nlohmann::json doc;
  doc["entries"] = nlohmann::json::array();
  for (const auto& e : entries_) {
    nlohmann::json j{{"pattern", e.pattern},
                     {"n", e.n},
                     {"count", e.count_decimal},
                     {"method", e.method},
                     {"engine", e.engine}};
    if (e.m) j["m"] = *e.m;
    doc["entries"].push_back(std::move(j));
  }
  const auto tmp = file_path().string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out.good()) {
      enabled_ = false;
      warning_ = "cache disabled: cannot write " + tmp;
      return;
    }
    out << doc.dump(2) << '\n';
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file_path(), ec);
  if (ec) {
    enabled_ = false;
    warning_ = "cache disabled: cannot replace " + file_path().string();
  }
}

}  // namespace klazar
