#include "monoxp/explainer.hpp"

#include "monoxp/errors.hpp"

#include <cassert>

namespace monoxp {

ExplainerState ExplainerState::pinned(const Point &v) {
  return {FeatureSet::all(v.size()), FeatureSet(v.size()), FeatureSet(v.size()), v, v};
}

ExplainerState ExplainerState::unpinned(const FeatureSpace &space) {
  const auto n = space.size();
  return {FeatureSet::all(n), FeatureSet(n), FeatureSet(n), space.lower_corner(),
          space.upper_corner()};
}

FeatureSet &ExplainerState::bucket(Bucket b) {
  switch (b) {
  case Bucket::candidates: return candidates;
  case Bucket::dropped: return dropped;
  case Bucket::picked: return picked;
  }
  return candidates;
}

const FeatureSet &ExplainerState::bucket(Bucket b) const {
  return const_cast<ExplainerState &>(*this).bucket(b);
}

bool ExplainerState::is_partition() const {
  const auto n = candidates.universe();
  if (dropped.universe() != n || picked.universe() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const int hits = int(candidates.contains(i)) + int(dropped.contains(i)) + int(picked.contains(i));
    if (hits != 1) return false;
  }
  return true;
}

bool ExplainerState::brackets(const Point &v) const {
  return point_leq(lower, v) && point_leq(v, upper);
}

namespace {

void move_feature(std::size_t i, ExplainerState &state, Bucket from, Bucket to) {
  auto &src = state.bucket(from);
  if (!src.contains(i)) {
    throw std::logic_error("feature " + std::to_string(i + 1) + " is not in the source set");
  }
  src.erase(i);
  state.bucket(to).insert(i);
}

std::vector<std::size_t> scan_order(std::size_t n, const std::vector<std::size_t> &order) {
  if (order.empty()) {
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
  }
  if (order.size() != n) throw InputError("feature order must list every feature exactly once");
  std::vector<bool> seen(n, false);
  for (auto i : order) {
    if (i >= n || seen[i]) throw InputError("feature order must be a permutation of the features");
    seen[i] = true;
  }
  return order;
}

void check_seed(const Oracle &oracle, const SearchOptions &options) {
  if (options.seed && options.seed->universe() != oracle.arity()) {
    throw InputError("seed arity does not match the classifier");
  }
}

} // namespace

void free_attr(std::size_t i, const FeatureSpace &space, ExplainerState &state, Bucket from,
               Bucket to) {
  move_feature(i, state, from, to);
  state.lower[i] = space.lower(i);
  state.upper[i] = space.upper(i);
}

void fix_attr(std::size_t i, const Point &v, ExplainerState &state, Bucket from, Bucket to) {
  move_feature(i, state, from, to);
  state.lower[i] = v[i];
  state.upper[i] = v[i];
}

Explanation find_axp(Oracle &oracle, const Point &v, const SearchOptions &options) {
  const auto &space = oracle.space();
  space.validate(v);
  check_seed(oracle, options);
  const auto order = scan_order(space.size(), options.order);

  auto state = ExplainerState::pinned(v);
  if (options.seed) {
    for (auto i : options.seed->indices()) free_attr(i, space, state, Bucket::candidates, Bucket::dropped);
  }
  if (oracle.classify(state.lower) != oracle.classify(state.upper)) {
    throw SeedBreaksInvariant("freeing the AXp seed already changes the prediction");
  }

  for (auto i : order) {
    if (!state.candidates.contains(i)) continue;
    free_attr(i, space, state, Bucket::candidates, Bucket::dropped);
    const auto lo = oracle.classify(state.lower);
    const auto hi = oracle.classify(state.upper);
    const bool keep = lo != hi;
    if (keep) fix_attr(i, v, state, Bucket::dropped, Bucket::picked);
    assert(state.is_partition() && state.brackets(v));
    if (options.on_step) options.on_step({i, keep, lo, hi, state});
  }
  return {ExplanationKind::axp, state.picked};
}

Explanation find_cxp(Oracle &oracle, const Point &v, const SearchOptions &options) {
  const auto &space = oracle.space();
  space.validate(v);
  check_seed(oracle, options);
  const auto order = scan_order(space.size(), options.order);

  auto state = ExplainerState::unpinned(space);
  const bool seeded = options.seed && !options.seed->empty();
  if (seeded) {
    for (auto i : options.seed->indices()) fix_attr(i, v, state, Bucket::candidates, Bucket::dropped);
  }
  if (oracle.classify(state.lower) == oracle.classify(state.upper)) {
    if (!seeded) throw NoCxpExists("the classifier is constant over the feature space");
    throw SeedBreaksInvariant("fixing the CXp seed already pins the prediction");
  }

  for (auto i : order) {
    if (!state.candidates.contains(i)) continue;
    fix_attr(i, v, state, Bucket::candidates, Bucket::dropped);
    const auto lo = oracle.classify(state.lower);
    const auto hi = oracle.classify(state.upper);
    const bool keep = lo == hi;
    if (keep) free_attr(i, space, state, Bucket::dropped, Bucket::picked);
    assert(state.is_partition() && state.brackets(v));
    if (options.on_step) options.on_step({i, keep, lo, hi, state});
  }
  return {ExplanationKind::cxp, state.picked};
}

} // namespace monoxp
