#pragma once

#include <array>
#include <compare>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qtwick {

/// One block (opener, closer) of a pair partition, 1-based, opener < closer.
struct Pair {
  int open = 0;
  int close = 0;

  auto operator<=>(const Pair&) const = default;
};

/// A perfect matching of [2n], stored with openers strictly increasing.
class PairPartition {
 public:
  PairPartition() = default;

  /// Accepts pairs in any order and with either orientation; throws
  /// ArgumentError unless they cover 1..2n exactly once.
  static PairPartition fromPairs(std::vector<Pair> pairs);

  /// Parses "(1,3),(2,4)" or "{(1,3),(2,4)}".
  static PairPartition parse(const std::string& text);

  int blockCount() const { return static_cast<int>(pairs_.size()); }
  int size() const { return 2 * blockCount(); }
  std::span<const Pair> pairs() const { return pairs_; }
  const Pair& block(int k) const { return pairs_[k]; }

  /// Block index (0-based) that contains 1-based position `pos`.
  int blockOf(int pos) const;
  int partnerOf(int pos) const;

  /// "{(1,3),(2,4)}"
  std::string toString() const;

  auto operator<=>(const PairPartition& other) const {
    return pairs_ <=> other.pairs_;
  }
  bool operator==(const PairPartition& other) const {
    return pairs_ == other.pairs_;
  }

 private:
  std::vector<Pair> pairs_;
};

/// Crossings are encoded (w_i, w_j, z_i, z_j) with w_i<w_j<z_i<z_j;
/// nestings (w_i, w_j, z_j, z_i) with w_i<w_j<z_j<z_i.
struct CrossNestReport {
  std::vector<std::array<int, 4>> crossSet;
  std::vector<std::array<int, 4>> nestSet;

  int crossCount() const { return static_cast<int>(crossSet.size()); }
  int nestCount() const { return static_cast<int>(nestSet.size()); }
};

CrossNestReport crossNest(const PairPartition& p);

inline constexpr int kMaxEnumerationBlocks = 8;

/// All (2n-1)!! pair partitions of [2n], in lexicographic order of their
/// canonical pair lists. Throws SizeLimitError unless 1 <= n <= 8.
std::vector<PairPartition> enumeratePairPartitions(int n);

/// Streams the same sequence as enumeratePairPartitions without holding it.
void forEachPairPartition(int n,
                          const std::function<void(const PairPartition&)>& f);

/// A set partition of [r], canonically encoded as a restricted-growth
/// string: label[k] is the 0-based block of position k+1, with blocks
/// numbered by first occurrence.
class SetPartition {
 public:
  SetPartition() = default;
  explicit SetPartition(std::vector<int> restrictedGrowth);

  std::span<const int> labels() const { return labels_; }
  int size() const { return static_cast<int>(labels_.size()); }
  int blockCount() const { return blockCount_; }

  /// Blocks as sorted lists of 1-based positions, ordered by smallest element.
  std::vector<std::vector<int>> blocks() const;

  /// The pair partition when every block has exactly two elements.
  std::optional<PairPartition> asPairPartition() const;

  /// "{{1,3},{2,4}}"
  std::string toString() const;

  bool operator==(const SetPartition&) const = default;

 private:
  std::vector<int> labels_;
  int blockCount_ = 0;
};

/// The ~-class of a tuple: positions are in the same block iff the values
/// agree. Throws ArgumentError on an empty tuple.
SetPartition classOf(std::span<const int> tuple);

}  // namespace qtwick
