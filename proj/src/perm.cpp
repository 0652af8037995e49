#include "klazar/perm.hpp"

#include <algorithm>
#include <charconv>

#include "klazar/error.hpp"

namespace klazar {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
  for (int v : images_) {
    if (v < 1 || v > n || seen[static_cast<size_t>(v)])
      throw domain_error("not a permutation of [" + std::to_string(n) + "]");
    seen[static_cast<size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<size_t>(i)] = i + 1;
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 1; i <= size(); ++i)
    inv[static_cast<size_t>((*this)(i)-1)] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::complement() const {
  std::vector<int> out(images_.size());
  const int n = size();
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = n + 1 - images_[static_cast<size_t>(i)];
  return Permutation(std::move(out));
}

PermTuple::PermTuple(std::vector<Permutation> perms) : perms_(std::move(perms)) {
  if (perms_.empty()) throw domain_error("a permutation tuple needs arity >= 1");
  for (const auto& p : perms_)
    if (p.size() != perms_.front().size())
      throw domain_error("tuple entries must share one ground set");
}

std::vector<std::pair<int, int>> inversion_set(const Permutation& p) {
  std::vector<std::pair<int, int>> inv;
  const int n = p.size();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (p(i) > p(j)) inv.emplace_back(i, j);
  return inv;
}

bool inversions_subset(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size())
    throw domain_error("weak-order comparison needs equal sizes");
  const int n = a.size();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (a(i) > a(j) && b(i) < b(j)) return false;
  return true;
}

Permutation parse_permutation(std::string_view text) {
  std::vector<int> images;
  if (text.find(',') != std::string_view::npos) {
    size_t start = 0;
    while (start <= text.size()) {
      size_t comma = text.find(',', start);
      std::string_view tok = text.substr(
          start, comma == std::string_view::npos ? text.size() - start
                                                 : comma - start);
      int value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw domain_error("malformed permutation text '" + std::string(text) + "'");
      images.push_back(value);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else {
    for (char c : text) {
      if (c < '1' || c > '9')
        throw domain_error("malformed permutation text '" + std::string(text) + "'");
      images.push_back(c - '0');
    }
  }
  return Permutation(std::move(images));
}

PermTuple parse_perm_tuple(std::string_view text) {
  std::vector<Permutation> perms;
  size_t start = 0;
  while (start <= text.size()) {
    size_t bar = text.find('|', start);
    std::string_view tok = text.substr(
        start, bar == std::string_view::npos ? text.size() - start : bar - start);
    perms.push_back(parse_permutation(tok));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return PermTuple(std::move(perms));
}

std::string format_permutation(const Permutation& p) {
  std::string out;
  const bool commas = p.size() > 9;
  for (int i = 1; i <= p.size(); ++i) {
    if (commas && i > 1) out += ',';
    out += std::to_string(p(i));
  }
  return out;
}

std::string format_perm_tuple(const PermTuple& t) {
  std::string out;
  for (int i = 0; i < t.arity(); ++i) {
    if (i) out += '|';
    out += format_permutation(t[i]);
  }
  return out;
}

}  // namespace klazar
