#pragma once

// Feature spaces, points, class orders and feature sets.
//
// Feature indices are 0-based inside the library. All I/O surfaces (CLI,
// JSON records, Python helpers that print) translate to 1-based indices.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace monoxp {

enum class FeatureKind { boolean, integer, real };

std::string_view to_string(FeatureKind kind);
std::optional<FeatureKind> feature_kind_from_string(std::string_view text);

/// Bounded ordinal domain of a single feature: [lower, upper].
class FeatureDomain {
public:
  static FeatureDomain boolean();
  static FeatureDomain integer(double lower, double upper);
  static FeatureDomain real(double lower, double upper);
  /// Dispatches to the factories above; throws SpecError on bad bounds.
  static FeatureDomain make(FeatureKind kind, double lower, double upper);

  [[nodiscard]] FeatureKind kind() const { return kind_; }
  [[nodiscard]] double lower() const { return lower_; }
  [[nodiscard]] double upper() const { return upper_; }
  [[nodiscard]] bool contains(double value) const;

  friend bool operator==(const FeatureDomain &, const FeatureDomain &) = default;

private:
  FeatureDomain(FeatureKind kind, double lower, double upper)
      : kind_(kind), lower_(lower), upper_(upper) {}

  FeatureKind kind_;
  double lower_;
  double upper_;
};

/// A concrete assignment of values to all features.
class Point {
public:
  Point() = default;
  explicit Point(std::vector<double> values) : values_(std::move(values)) {}
  Point(std::initializer_list<double> values) : values_(values) {}

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  double &operator[](std::size_t i) { return values_[i]; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] auto begin() const { return values_.begin(); }
  [[nodiscard]] auto end() const { return values_.end(); }

  friend bool operator==(const Point &, const Point &) = default;
  friend auto operator<=>(const Point &, const Point &) = default;

private:
  std::vector<double> values_;
};

/// Componentwise partial order: true iff a[i] <= b[i] for every i.
/// Throws InputError on arity mismatch.
bool point_leq(const Point &a, const Point &b);

class FeatureSpace {
public:
  FeatureSpace() = default;
  /// `names` may be empty, in which case features are called x1..xN.
  explicit FeatureSpace(std::vector<FeatureDomain> domains, std::vector<std::string> names = {});

  [[nodiscard]] std::size_t size() const { return domains_.size(); }
  [[nodiscard]] const FeatureDomain &domain(std::size_t i) const { return domains_.at(i); }
  [[nodiscard]] double lower(std::size_t i) const { return domains_.at(i).lower(); }
  [[nodiscard]] double upper(std::size_t i) const { return domains_.at(i).upper(); }
  [[nodiscard]] const std::string &name(std::size_t i) const { return names_.at(i); }
  [[nodiscard]] const std::vector<FeatureDomain> &domains() const { return domains_; }
  [[nodiscard]] const std::vector<std::string> &names() const { return names_; }

  [[nodiscard]] Point lower_corner() const;
  [[nodiscard]] Point upper_corner() const;

  [[nodiscard]] bool contains(const Point &p) const;
  /// Throws InputError naming the first offending coordinate.
  void validate(const Point &p) const;

  friend bool operator==(const FeatureSpace &, const FeatureSpace &) = default;

private:
  std::vector<FeatureDomain> domains_;
  std::vector<std::string> names_;
};

using ClassRank = std::size_t;

/// Totally ordered class labels; the index of a label is its rank.
class ClassOrder {
public:
  ClassOrder() = default;
  explicit ClassOrder(std::vector<std::string> labels);

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] const std::string &label(ClassRank rank) const { return labels_.at(rank); }
  [[nodiscard]] std::optional<ClassRank> rank_of(std::string_view label) const;
  [[nodiscard]] const std::vector<std::string> &labels() const { return labels_; }

  friend bool operator==(const ClassOrder &, const ClassOrder &) = default;

private:
  std::vector<std::string> labels_;
};

/// Subset of the features {0..N-1} of a fixed universe size N.
class FeatureSet {
public:
  FeatureSet() = default;
  explicit FeatureSet(std::size_t universe) : bits_(universe, false) {}
  FeatureSet(std::size_t universe, std::initializer_list<std::size_t> members);

  static FeatureSet all(std::size_t universe);
  static FeatureSet from_indices(std::size_t universe, std::span<const std::size_t> members);

  [[nodiscard]] std::size_t universe() const { return bits_.size(); }
  [[nodiscard]] bool contains(std::size_t i) const { return i < bits_.size() && bits_[i]; }
  void insert(std::size_t i);
  void erase(std::size_t i);

  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] bool empty() const { return size() == 0; }
  /// Members in ascending order.
  [[nodiscard]] std::vector<std::size_t> indices() const;
  /// Members in ascending order, shifted to 1-based.
  [[nodiscard]] std::vector<std::size_t> one_based() const;

  [[nodiscard]] FeatureSet complement() const;
  [[nodiscard]] bool is_subset_of(const FeatureSet &other) const;
  [[nodiscard]] bool intersects(const FeatureSet &other) const;

  friend bool operator==(const FeatureSet &, const FeatureSet &) = default;
  /// Orders by cardinality, then lexicographically by members.
  friend bool operator<(const FeatureSet &a, const FeatureSet &b);

private:
  std::vector<bool> bits_;
};

enum class ExplanationKind { axp, cxp };

std::string_view to_string(ExplanationKind kind);

struct Explanation {
  ExplanationKind kind;
  FeatureSet features;

  friend bool operator==(const Explanation &, const Explanation &) = default;
};

/// Lower/upper points of the box in which `fixed` features are pinned to
/// `v` and every other feature ranges over its full domain.
struct Corners {
  Point lower;
  Point upper;
};

Corners corner_points(const FeatureSpace &space, const Point &v, const FeatureSet &fixed);

} // namespace monoxp
