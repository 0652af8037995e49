#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace klazar {

/// A permutation of [n] in one-line notation; images are 1-based.
class Permutation {
 public:
  Permutation() = default;  // the unique permutation of the empty set
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<size_t>(i - 1)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  /// i -> n+1-sigma(i)
  Permutation complement() const;

  bool operator==(const Permutation& o) const { return images_ == o.images_; }
  bool operator!=(const Permutation& o) const { return !(*this == o); }
  bool operator<(const Permutation& o) const { return images_ < o.images_; }

 private:
  std::vector<int> images_;
};

/// k permutations sharing one [n]; k >= 1.
class PermTuple {
 public:
  explicit PermTuple(std::vector<Permutation> perms);

  int arity() const { return static_cast<int>(perms_.size()); }
  int degree() const { return perms_.front().size(); }
  const Permutation& operator[](int i) const {
    return perms_[static_cast<size_t>(i)];
  }
  const std::vector<Permutation>& perms() const { return perms_; }

  bool operator==(const PermTuple& o) const { return perms_ == o.perms_; }
  bool operator!=(const PermTuple& o) const { return !(*this == o); }

 private:
  std::vector<Permutation> perms_;
};

/// Pairs (i, j), i < j, with sigma(i) > sigma(j), sorted lexicographically.
std::vector<std::pair<int, int>> inversion_set(const Permutation& p);

/// Inv(a) as a subset of Inv(b)? The building block for weak-order
/// comparisons.
bool inversions_subset(const Permutation& a, const Permutation& b);

/// Text format: digit string for n <= 9 ("3142"), comma-separated otherwise;
/// tuples join entries with "|" ("3142|2413").
Permutation parse_permutation(std::string_view text);
PermTuple parse_perm_tuple(std::string_view text);
std::string format_permutation(const Permutation& p);
std::string format_perm_tuple(const PermTuple& t);

}  // namespace klazar
