#pragma once

#include "monoxp/oracle.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace monoxp {

/// Shared storage for classifiers that own their space and class order.
class ClassifierBase : public Oracle {
public:
  [[nodiscard]] const FeatureSpace &space() const override { return space_; }
  [[nodiscard]] const ClassOrder &classes() const override { return classes_; }

protected:
  ClassifierBase(FeatureSpace space, ClassOrder classes)
      : space_(std::move(space)), classes_(std::move(classes)) {}

  FeatureSpace space_;
  ClassOrder classes_;
};

/// Student grade model: four marks Q, X, H, R in [0, 10],
/// S = max(0.3Q + 0.6X + 0.1H, R), graded F < E < D < C < B < A at
/// thresholds 2, 4, 5, 7, 9.
class GradeClassifier final : public ClassifierBase {
public:
  GradeClassifier();
  /// Same model with caller-supplied names/labels; shapes must match.
  GradeClassifier(FeatureSpace space, ClassOrder classes);

  ClassRank classify(const Point &x) override;
  /// Final score S, for diagnostics.
  [[nodiscard]] static double score(const Point &x);

  static FeatureSpace default_space();
  static ClassOrder default_classes();
};

/// rank(x) = number of thresholds t with  sum_i w_i x_i >= t.
/// Nonnegative weights make the model monotone.
class LinearThresholdClassifier final : public ClassifierBase {
public:
  struct Unchecked {};

  LinearThresholdClassifier(FeatureSpace space, ClassOrder classes, std::vector<double> weights,
                            std::vector<double> thresholds);
  /// Skips the nonnegative-weight check; for building non-monotone fixtures.
  LinearThresholdClassifier(Unchecked, FeatureSpace space, ClassOrder classes,
                            std::vector<double> weights, std::vector<double> thresholds);

  ClassRank classify(const Point &x) override;

  [[nodiscard]] const std::vector<double> &weights() const { return weights_; }
  [[nodiscard]] const std::vector<double> &thresholds() const { return thresholds_; }

private:
  void validate_shape() const;

  std::vector<double> weights_;
  std::vector<double> thresholds_;
};

/// Boolean classifier: 1 iff some term has all of its features set.
class MonotoneDnfClassifier final : public ClassifierBase {
public:
  MonotoneDnfClassifier(std::size_t arity, std::vector<FeatureSet> terms);
  MonotoneDnfClassifier(FeatureSpace space, ClassOrder classes, std::vector<FeatureSet> terms);

  ClassRank classify(const Point &x) override;
  [[nodiscard]] const std::vector<FeatureSet> &terms() const { return terms_; }

private:
  std::vector<FeatureSet> terms_;
};

/// Draws `num_terms` terms, each a uniform subset of uniformly drawn size
/// 1..arity. Duplicate terms and supersets of other terms are pruned.
MonotoneDnfClassifier random_monotone_dnf(std::size_t arity, std::size_t num_terms,
                                          std::mt19937_64 &rng);

/// Signed literals over variables 1..k (DIMACS convention).
using LiteralClauses = std::vector<std::vector<int>>;

/// Boolean classifier over N = 2k features built from a CNF `phi` on k
/// variables: 1 iff x_i = x_{i+k} = 1 for some i, or phi~(x) = 1, where
/// phi~ replaces each negative literal -i by the positive literal i+k.
/// Rejects trivially satisfiable phi (a literal common to all clauses).
class AppendixCnfClassifier final : public ClassifierBase {
public:
  AppendixCnfClassifier(std::size_t k, LiteralClauses phi);

  ClassRank classify(const Point &x) override;

  [[nodiscard]] std::size_t k() const { return k_; }
  [[nodiscard]] const LiteralClauses &phi() const { return phi_; }
  /// phi~ as positive clauses over 0-based feature indices.
  [[nodiscard]] const std::vector<std::vector<std::size_t>> &positive_clauses() const {
    return positive_;
  }

private:
  std::size_t k_;
  LiteralClauses phi_;
  std::vector<std::vector<std::size_t>> positive_;
};

/// Returns a literal occurring in every clause of `phi`, if any.
std::optional<int> common_literal(const LiteralClauses &phi);

/// Adapts any callable to the Oracle interface.
class CallableOracle final : public ClassifierBase {
public:
  using Function = std::function<ClassRank(const Point &)>;

  CallableOracle(FeatureSpace space, ClassOrder classes, Function fn)
      : ClassifierBase(std::move(space), std::move(classes)), fn_(std::move(fn)) {}

  ClassRank classify(const Point &x) override;

private:
  Function fn_;
};

/// Wraps another oracle and counts the calls that reach it. With the cache
/// enabled, repeated points are answered from memory and not counted.
///
/// The cache is keyed on exact coordinates; every point the explainers
/// query has coordinates in {lower(i), v_i, upper(i)}, so hit rates are high.
class CountingOracle final : public Oracle {
public:
  explicit CountingOracle(Oracle &inner, bool cache = false) : inner_(inner), cache_enabled_(cache) {}

  [[nodiscard]] const FeatureSpace &space() const override { return inner_.space(); }
  [[nodiscard]] const ClassOrder &classes() const override { return inner_.classes(); }
  ClassRank classify(const Point &x) override;

  [[nodiscard]] std::size_t call_count() const { return calls_; }
  [[nodiscard]] std::size_t cache_hits() const { return hits_; }
  [[nodiscard]] bool caching() const { return cache_enabled_; }
  /// Wall time spent inside the wrapped oracle.
  [[nodiscard]] std::chrono::nanoseconds inner_time() const { return inner_time_; }

  void reset_counters();
  void clear_cache() { cache_.clear(); }

private:
  Oracle &inner_;
  bool cache_enabled_;
  std::size_t calls_ = 0;
  std::size_t hits_ = 0;
  std::chrono::nanoseconds inner_time_{0};
  std::map<Point, ClassRank> cache_;
};

struct MonotonicityViolation {
  Point lower;
  Point upper;
  ClassRank lower_rank;
  ClassRank upper_rank;
};

/// Samples `trials` comparable pairs a <= b in the feature box and reports
/// every pair with rank(a) > rank(b). An empty result is not a proof.
std::vector<MonotonicityViolation> probe_monotonicity(Oracle &oracle, std::size_t trials,
                                                      std::uint64_t seed);

} // namespace monoxp
