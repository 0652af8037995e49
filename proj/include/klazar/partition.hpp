#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace klazar {

/// A set partition in standard form: every block sorted ascending, blocks
/// ordered by minimum element. Immutable after construction; all operations
/// on it are pure.
///
/// The structure lives on ranks 1..n. A partition may additionally carry a
/// gapped label set (the literature habitually writes restrictions like
/// 36/27 without relabeling); labels only affect parsing, formatting and the
/// coordinates of reported witnesses, never the combinatorics. Canonical
/// partitions have labels identical to their ranks.
///
/// Alongside the block list the object keeps an element->block index so
/// same-block queries are O(1) during containment searches.
class SetPartition {
 public:
  SetPartition() = default;  // the empty partition (n = 0)

  /// Builds the unique standard form. The union of the blocks must be
  /// exactly {1,...,n}; rejects overlaps, repeats and gapped unions.
  static SetPartition standardize(std::vector<std::vector<int>> raw_blocks);

  /// Like standardize but the union may be any set of distinct positive
  /// integers, which becomes the label set.
  static SetPartition from_labeled_blocks(
      std::vector<std::vector<int>> raw_blocks);

  int n() const { return n_; }
  /// Blocks in rank space (entries 1..n).
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }

  /// 0-based index of the block containing the element of rank `element`.
  int block_of(int element) const;
  bool same_block(int a, int b) const { return block_of(a) == block_of(b); }

  bool has_custom_labels() const { return !labels_.empty(); }
  int label_of(int rank) const;
  /// Rank of a label, if present.
  std::optional<int> rank_of_label(int label) const;
  /// Blocks written with their labels (equals blocks() when canonical).
  std::vector<std::vector<int>> labeled_blocks() const;

  /// The identity-labeled partition with the same structure.
  SetPartition canonical() const;

  bool operator==(const SetPartition& other) const {
    return n_ == other.n_ && blocks_ == other.blocks_ &&
           labels_ == other.labels_;
  }
  bool operator!=(const SetPartition& other) const { return !(*this == other); }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;  // indexed 1..n
  std::vector<int> labels_;    // empty when labels are 1..n
};

/// Host positions realizing a pattern, in the host's label space; strictly
/// increasing, one per pattern element. Restricting the host to them is
/// order-isomorphic to the pattern.
struct ContainmentWitness {
  std::vector<int> positions;
};

SetPartition standardize(std::vector<std::vector<int>> raw_blocks);

/// Induced partition on a subset of the host's labels, relabeled to
/// {1,...,|subset|}. Two relabeled elements share a block iff their
/// preimages did.
SetPartition restrict_to(const SetPartition& host, std::vector<int> subset);

/// Klazar containment with witness extraction. Depth-first search over
/// increasing position assignments, pruning as soon as a same-block /
/// different-block constraint against an assigned element fails. Returns the
/// lexicographically least witness, or nullopt if the host avoids the
/// pattern. Every partition contains the empty pattern; the empty host
/// contains only the empty pattern.
std::optional<ContainmentWitness> contains(const SetPartition& host,
                                           const SetPartition& pattern);

/// Independent brute-force route: enumerate every |pattern|-subset of the
/// host in lexicographic order and compare standardized restrictions. Used
/// by the oracle counting engine and the equivalence suites; deliberately
/// shares no code with contains().
std::optional<ContainmentWitness> contains_bruteforce(
    const SetPartition& host, const SetPartition& pattern);

/// n minus the number of blocks. Defined for n >= 1 only.
int rank(const SetPartition& p);

/// True iff every block is a run of consecutive ranks and the blocks are
/// stacked (max of one block below min of the next).
bool is_layered(const SetPartition& p);

/// Text format: blocks joined by "/". Elements are concatenated digits when
/// every label is below 10 ("1356/24") and comma-separated otherwise
/// ("1,3,5,6/2,4"); commas are accepted for small labels too. The empty
/// partition is "". With strict = true the text must already be the
/// canonical form of a partition of {1,...,n}; otherwise the parser
/// standardizes and keeps gapped label sets.
SetPartition parse_partition(std::string_view text, bool strict = false);
std::string format_partition(const SetPartition& p);

}  // namespace klazar
