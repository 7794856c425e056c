#pragma once

#include "monoxp/oracle.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace monoxp {

enum class Bucket { candidates, dropped, picked };

/// Working state shared by the AXp and CXp searches.
///
/// candidates / dropped / picked always partition the features, and
/// lower <= v <= upper holds componentwise. AXp search keeps
/// classify(lower) == classify(upper); CXp search keeps them different.
struct ExplainerState {
  FeatureSet candidates;
  FeatureSet dropped;
  FeatureSet picked;
  Point lower;
  Point upper;

  /// All features candidates, every coordinate pinned to v.
  static ExplainerState pinned(const Point &v);
  /// All features candidates, coordinates at the domain bounds.
  static ExplainerState unpinned(const FeatureSpace &space);

  [[nodiscard]] FeatureSet &bucket(Bucket b);
  [[nodiscard]] const FeatureSet &bucket(Bucket b) const;
  [[nodiscard]] bool is_partition() const;
  [[nodiscard]] bool brackets(const Point &v) const;
};

/// Moves i from `from` to `to` and lets it range over its whole domain.
void free_attr(std::size_t i, const FeatureSpace &space, ExplainerState &state, Bucket from,
               Bucket to);
/// Moves i from `from` to `to` and pins it to v_i.
void fix_attr(std::size_t i, const Point &v, ExplainerState &state, Bucket from, Bucket to);

/// One decision of the greedy scan, reported after it is applied.
struct ScanStep {
  std::size_t feature;
  /// Whether the feature ended up in the explanation.
  bool kept;
  ClassRank lower_rank;
  ClassRank upper_rank;
  const ExplainerState &state;
};

struct SearchOptions {
  /// AXp: features forced free. CXp: features forced fixed. Empty = none.
  std::optional<FeatureSet> seed;
  /// Scan order, a permutation of 0..N-1. Empty = ascending.
  std::vector<std::size_t> order;
  /// Called after each analyzed feature.
  std::function<void(const ScanStep &)> on_step;
};

/// One subset-minimal AXp of the prediction at v, disjoint from the seed.
/// At most 2N + 2 oracle calls. Throws SeedBreaksInvariant if freeing the
/// seed already lets the prediction change.
Explanation find_axp(Oracle &oracle, const Point &v, const SearchOptions &options = {});

/// One subset-minimal CXp of the prediction at v, disjoint from the seed.
/// At most 2N + 2 oracle calls. Throws NoCxpExists when the classifier is
/// constant over the box, SeedBreaksInvariant when fixing the seed already
/// pins the prediction.
Explanation find_cxp(Oracle &oracle, const Point &v, const SearchOptions &options = {});

} // namespace monoxp
