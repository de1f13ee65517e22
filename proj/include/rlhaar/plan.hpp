#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlhaar/basis.hpp"

namespace rlhaar {

/// A total ordering (rearrangement) of the 2^{J+1} expansion terms up to a
/// maximum level J: the drift term plus every Haar pair (j,k) with j <= J.
///
/// Positions are 1-based throughout, matching the series indexing
/// sum_{i=n}^inf used for truncation tails.  The drift participates as an
/// ordinary term; the natural order places it first, then (j,k) sorted by
/// (j,k).
class TruncationPlan {
 public:
  static TruncationPlan natural(int max_level);
  /// Exact reverse of the natural order (deepest level first, drift last).
  static TruncationPlan reversed_levels(int max_level);
  /// Fisher-Yates shuffle of the natural order driven by std::mt19937_64, so
  /// the permutation is reproducible from the seed alone.
  static TruncationPlan random(int max_level, std::uint64_t seed);
  /// One term per line: "drift" or "j k".  The file must list every term of
  /// some level range exactly once; duplicates or omissions are fatal.
  static TruncationPlan from_file(const std::string& path);
  /// Validates that `order` is a permutation of the full term set of its
  /// maximum level.
  explicit TruncationPlan(std::vector<BasisIndex> order);

  int max_level() const { return max_level_; }
  std::int64_t num_terms() const { return static_cast<std::int64_t>(order_.size()); }
  const std::vector<BasisIndex>& order() const { return order_; }

  /// 1-based position of a term in this plan.
  std::int64_t position_of(const BasisIndex& index) const;

 private:
  TruncationPlan() = default;
  void index_positions();

  int max_level_ = 0;
  std::vector<BasisIndex> order_;
  std::vector<std::int64_t> position_by_key_;  // 1-based, indexed by BasisIndex::key()
};

}  // namespace rlhaar
