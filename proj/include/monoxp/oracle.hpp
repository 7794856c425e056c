#pragma once

#include "monoxp/domain.hpp"

#include <functional>
#include <memory>

namespace monoxp {

/// Black-box classifier. The only interaction the explainers need is
/// `classify`, which returns the rank of the predicted class.
///
/// Implementations must be deterministic. Monotonicity
/// (a <= b implies classify(a) <= classify(b)) is assumed, not enforced;
/// see probe_monotonicity.
///
/// An oracle is used from one thread at a time.
class Oracle {
public:
  virtual ~Oracle() = default;

  [[nodiscard]] virtual const FeatureSpace &space() const = 0;
  [[nodiscard]] virtual const ClassOrder &classes() const = 0;
  virtual ClassRank classify(const Point &x) = 0;

  [[nodiscard]] std::size_t arity() const { return space().size(); }
  const std::string &classify_label(const Point &x) { return classes().label(classify(x)); }
};

/// Produces independent oracle instances, e.g. one per worker thread.
using OracleFactory = std::function<std::unique_ptr<Oracle>()>;

/// True iff fixing `fixed` to the values of `v` (and freeing the rest)
/// cannot change the prediction. Two oracle calls; minimality is not checked.
bool verify_axp(Oracle &oracle, const Point &v, const FeatureSet &fixed);

/// True iff freeing `freed` (and fixing the rest to `v`) admits a different
/// prediction. Two oracle calls; minimality is not checked.
bool verify_cxp(Oracle &oracle, const Point &v, const FeatureSet &freed);

/// Drop-one check: the set verifies, and removing any single member makes
/// it fail. Costs 2 * (|features| + 1) oracle calls.
struct MinimalityCheck {
  bool holds = false;
  bool minimal = false;
  /// 0-based features whose removal still verifies (witnesses of non-minimality).
  std::vector<std::size_t> redundant;
};

MinimalityCheck check_explanation(Oracle &oracle, const Point &v, const Explanation &e);

} // namespace monoxp
