#include "klazar/partition.hpp"

#include <algorithm>
#include <charconv>

#include "klazar/error.hpp"

namespace klazar {

SetPartition SetPartition::from_labeled_blocks(
    std::vector<std::vector<int>> raw_blocks) {
  std::vector<int> labels;
  for (auto& block : raw_blocks) {
    if (block.empty()) throw domain_error("malformed partition: empty block");
    std::sort(block.begin(), block.end());
    labels.insert(labels.end(), block.begin(), block.end());
  }
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw domain_error("malformed partition: an element appears twice");
  if (!labels.empty() && labels.front() < 1)
    throw domain_error("malformed partition: elements must be positive");
  const int n = static_cast<int>(labels.size());

  SetPartition p;
  p.n_ = n;
  p.blocks_ = std::move(raw_blocks);
  // to rank space
  for (auto& block : p.blocks_)
    for (int& e : block) {
      const auto it = std::lower_bound(labels.begin(), labels.end(), e);
      e = static_cast<int>(it - labels.begin()) + 1;
    }
  std::sort(p.blocks_.begin(), p.blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  p.block_of_.assign(static_cast<size_t>(n) + 1, -1);
  for (int b = 0; b < p.block_count(); ++b)
    for (int e : p.blocks_[static_cast<size_t>(b)])
      p.block_of_[static_cast<size_t>(e)] = b;
  const bool identity = labels.empty() || labels.back() == n;
  if (!identity) p.labels_ = std::move(labels);
  return p;
}

SetPartition SetPartition::standardize(std::vector<std::vector<int>> raw_blocks) {
  SetPartition p = from_labeled_blocks(std::move(raw_blocks));
  if (p.has_custom_labels())
    throw domain_error("malformed partition: union is not {1,...,n}");
  return p;
}

int SetPartition::block_of(int element) const {
  if (element < 1 || element > n_)
    throw domain_error("element " + std::to_string(element) +
                       " outside ground set [" + std::to_string(n_) + "]");
  return block_of_[static_cast<size_t>(element)];
}

int SetPartition::label_of(int rank) const {
  if (rank < 1 || rank > n_)
    throw domain_error("rank " + std::to_string(rank) + " outside [" +
                       std::to_string(n_) + "]");
  return labels_.empty() ? rank : labels_[static_cast<size_t>(rank - 1)];
}

std::optional<int> SetPartition::rank_of_label(int label) const {
  if (labels_.empty())
    return label >= 1 && label <= n_ ? std::optional<int>(label) : std::nullopt;
  const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<int>(it - labels_.begin()) + 1;
}

std::vector<std::vector<int>> SetPartition::labeled_blocks() const {
  std::vector<std::vector<int>> out = blocks_;
  if (!labels_.empty())
    for (auto& block : out)
      for (int& e : block) e = labels_[static_cast<size_t>(e - 1)];
  return out;
}

SetPartition SetPartition::canonical() const {
  if (!has_custom_labels()) return *this;
  SetPartition p = *this;
  p.labels_.clear();
  return p;
}

SetPartition standardize(std::vector<std::vector<int>> raw_blocks) {
  return SetPartition::standardize(std::move(raw_blocks));
}

SetPartition restrict_to(const SetPartition& host, std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  // Relabel position i of the sorted subset to i+1; blocks are pulled back
  // through that map.
  std::vector<std::vector<int>> relabeled(
      static_cast<size_t>(host.block_count()));
  for (int i = 0; i < static_cast<int>(subset.size()); ++i) {
    const auto r = host.rank_of_label(subset[static_cast<size_t>(i)]);
    if (!r)
      throw domain_error("restriction element " +
                         std::to_string(subset[static_cast<size_t>(i)]) +
                         " outside ground set");
    relabeled[static_cast<size_t>(host.block_of(*r))].push_back(i + 1);
  }
  std::vector<std::vector<int>> blocks;
  for (auto& block : relabeled)
    if (!block.empty()) blocks.push_back(std::move(block));
  return SetPartition::standardize(std::move(blocks));
}

namespace {

// Shared DFS: assigns pattern elements 1..m to strictly increasing host
// ranks. A candidate rank is consistent iff for every already assigned
// element the same-block relation in the host matches the one in the
// pattern; partition structure is exactly the same-block relation, so
// matching relations on all pairs is order-isomorphism of the restriction.
bool assign_from(const SetPartition& host, const SetPartition& pattern,
                 std::vector<int>& pos, int next) {
  const int m = pattern.n();
  const int n = host.n();
  if (next == m) return true;
  // Enough room must remain for the elements after `next`.
  const int start = next == 0 ? 1 : pos[static_cast<size_t>(next - 1)] + 1;
  for (int p = start; p <= n - (m - next - 1); ++p) {
    bool ok = true;
    for (int j = 0; j < next; ++j) {
      const bool host_same = host.same_block(pos[static_cast<size_t>(j)], p);
      const bool pat_same = pattern.same_block(j + 1, next + 1);
      if (host_same != pat_same) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    pos[static_cast<size_t>(next)] = p;
    if (assign_from(host, pattern, pos, next + 1)) return true;
  }
  return false;
}

std::vector<int> ranks_to_labels(const SetPartition& host,
                                 std::vector<int> ranks) {
  for (int& r : ranks) r = host.label_of(r);
  return ranks;
}

}  // namespace

std::optional<ContainmentWitness> contains(const SetPartition& host,
                                           const SetPartition& pattern) {
  if (pattern.n() == 0) return ContainmentWitness{{}};
  if (pattern.n() > host.n()) return std::nullopt;
  std::vector<int> pos(static_cast<size_t>(pattern.n()), 0);
  if (assign_from(host, pattern, pos, 0))
    return ContainmentWitness{ranks_to_labels(host, std::move(pos))};
  return std::nullopt;
}

std::optional<ContainmentWitness> contains_bruteforce(
    const SetPartition& host, const SetPartition& pattern) {
  const int m = pattern.n();
  const int n = host.n();
  if (m == 0) return ContainmentWitness{{}};
  if (m > n) return std::nullopt;
  const SetPartition target = pattern.canonical();
  const SetPartition host_c = host.canonical();
  std::vector<int> pick(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) pick[static_cast<size_t>(i)] = i + 1;
  while (true) {
    if (restrict_to(host_c, pick) == target)
      return ContainmentWitness{ranks_to_labels(host, pick)};
    // next combination in lexicographic order
    int i = m - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == n - (m - 1 - i)) --i;
    if (i < 0) break;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j < m; ++j)
      pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
  }
  return std::nullopt;
}

int rank(const SetPartition& p) {
  if (p.n() == 0) throw domain_error("rank is undefined for the empty partition");
  return p.n() - p.block_count();
}

bool is_layered(const SetPartition& p) {
  for (int b = 0; b + 1 < p.block_count(); ++b) {
    if (p.blocks()[static_cast<size_t>(b)].back() >
        p.blocks()[static_cast<size_t>(b + 1)].front())
      return false;
  }
  // Stacked blocks over ranks are automatically runs of consecutive ranks.
  return true;
}

namespace {

std::vector<int> parse_block(std::string_view text) {
  std::vector<int> elements;
  if (text.find(',') != std::string_view::npos) {
    size_t start = 0;
    while (start <= text.size()) {
      size_t comma = text.find(',', start);
      std::string_view tok = text.substr(
          start, comma == std::string_view::npos ? text.size() - start
                                                 : comma - start);
      int value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 1)
        throw domain_error("malformed partition text: bad element '" +
                           std::string(tok) + "'");
      elements.push_back(value);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else {
    // digit-concatenation form, one element per digit
    for (char c : text) {
      if (c < '1' || c > '9')
        throw domain_error(
            "malformed partition text: digit form allows only 1-9, got '" +
            std::string(1, c) + "'");
      elements.push_back(c - '0');
    }
  }
  if (elements.empty()) throw domain_error("malformed partition text: empty block");
  return elements;
}

}  // namespace

SetPartition parse_partition(std::string_view text, bool strict) {
  // trim
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
    text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\n' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty()) return SetPartition{};

  std::vector<std::vector<int>> raw;
  size_t start = 0;
  while (start <= text.size()) {
    size_t slash = text.find('/', start);
    std::string_view tok = text.substr(
        start, slash == std::string_view::npos ? text.size() - start
                                               : slash - start);
    raw.push_back(parse_block(tok));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  if (strict) {
    for (const auto& block : raw)
      if (!std::is_sorted(block.begin(), block.end()) ||
          std::adjacent_find(block.begin(), block.end()) != block.end())
        throw domain_error("strict parse: block not sorted ascending");
    for (size_t b = 0; b + 1 < raw.size(); ++b)
      if (raw[b].front() >= raw[b + 1].front())
        throw domain_error("strict parse: blocks not ordered by minimum");
    return SetPartition::standardize(std::move(raw));
  }
  return SetPartition::from_labeled_blocks(std::move(raw));
}

std::string format_partition(const SetPartition& p) {
  std::string out;
  const auto blocks = p.labeled_blocks();
  bool commas = false;
  for (const auto& block : blocks)
    for (int e : block) commas = commas || e > 9;
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (b) out += '/';
    for (size_t i = 0; i < blocks[b].size(); ++i) {
      if (commas && i) out += ',';
      out += std::to_string(blocks[b][i]);
    }
  }
  return out;
}

}  // namespace klazar
