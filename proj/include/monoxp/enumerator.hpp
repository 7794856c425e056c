#pragma once

#include "monoxp/explainer.hpp"
#include "monoxp/oracle.hpp"
#include "monoxp/sat.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <vector>

namespace monoxp {

struct EnumerationOptions {
  /// Stop after this many explanations (AXp's and CXp's together).
  std::optional<std::size_t> limit;
  /// Stop once this much wall time has elapsed; checked between explanations.
  std::optional<std::chrono::nanoseconds> budget;
  /// Scan order passed to every single-explanation search. Empty = ascending.
  std::vector<std::size_t> order;
  sat::SolverOptions solver;
  /// Receives each explanation as soon as it is found.
  std::function<void(const Explanation &)> on_explanation;
};

struct EnumerationReport {
  std::vector<Explanation> axps;
  std::vector<Explanation> cxps;
  std::size_t sat_calls = 0;
  std::size_t oracle_calls = 0;
  /// Time spent inside the classifier.
  std::chrono::nanoseconds classify_time{0};
  std::chrono::nanoseconds elapsed{0};
  /// False when the run stopped on `limit` or `budget`; the lists are then
  /// a prefix of a complete enumeration.
  bool complete = false;
  /// Blocking clauses accumulated over the run, over u_1..u_N (u_i = 1: free).
  sat::CnfFormula blocking{0};
};

/// Lists every AXp and CXp of the prediction at v, one SAT call per
/// explanation plus one final call. Each satisfying assignment fixes the
/// features with u_i = 0; if that box keeps the prediction, an AXp is grown
/// from the free features as seed, otherwise a CXp from the fixed ones.
///
/// Throws InconsistentOracle when a seed produced by the loop is rejected,
/// which only happens with a non-monotone classifier.
EnumerationReport enumerate(Oracle &oracle, const Point &v, const EnumerationOptions &options = {});

enum class DualityViolation { misses_set, not_minimal };

struct DualityResult {
  bool holds = true;
  /// The offending explanation, its kind, and the violated condition.
  std::optional<Explanation> offender;
  DualityViolation violation = DualityViolation::misses_set;
  /// For misses_set: the set of the other family that is not hit.
  /// For not_minimal: the offender minus one redundant feature.
  std::optional<FeatureSet> witness;

  explicit operator bool() const { return holds; }
};

/// Checks that each AXp is a minimal hitting set of the CXp family and each
/// CXp a minimal hitting set of the AXp family.
DualityResult check_duality(const std::vector<Explanation> &axps,
                            const std::vector<Explanation> &cxps);

struct ExplanationFamilies {
  std::vector<Explanation> axps;
  std::vector<Explanation> cxps;
};

/// Reference enumeration by scanning all 2^N subsets with corner checks.
/// Refuses (InputError) when N exceeds `max_features`.
ExplanationFamilies brute_force_explanations(Oracle &oracle, const Point &v,
                                             std::size_t max_features = 16);

/// Feature sets of a family, sorted by size and then members.
std::vector<FeatureSet> sorted_sets(const std::vector<Explanation> &explanations);

} // namespace monoxp
