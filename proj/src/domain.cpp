#include "monoxp/domain.hpp"

#include "monoxp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace monoxp {

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
  case FeatureKind::boolean: return "boolean";
  case FeatureKind::integer: return "integer";
  case FeatureKind::real: return "real";
  }
  return "?";
}

std::optional<FeatureKind> feature_kind_from_string(std::string_view text) {
  if (text == "boolean" || text == "bool") return FeatureKind::boolean;
  if (text == "integer" || text == "int") return FeatureKind::integer;
  if (text == "real") return FeatureKind::real;
  return std::nullopt;
}

namespace {

bool is_integral(double x) { return std::isfinite(x) && std::floor(x) == x; }

void check_bounds(double lower, double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper)) {
    throw SpecError("feature domain bounds must be finite");
  }
  if (lower > upper) {
    std::ostringstream msg;
    msg << "feature domain has lower bound " << lower << " above upper bound " << upper;
    throw SpecError(msg.str());
  }
}

} // namespace

FeatureDomain FeatureDomain::boolean() { return {FeatureKind::boolean, 0.0, 1.0}; }

FeatureDomain FeatureDomain::integer(double lower, double upper) {
  check_bounds(lower, upper);
  if (!is_integral(lower) || !is_integral(upper)) {
    throw SpecError("integer feature domain needs integral bounds");
  }
  return {FeatureKind::integer, lower, upper};
}

FeatureDomain FeatureDomain::real(double lower, double upper) {
  check_bounds(lower, upper);
  return {FeatureKind::real, lower, upper};
}

FeatureDomain FeatureDomain::make(FeatureKind kind, double lower, double upper) {
  switch (kind) {
  case FeatureKind::boolean:
    if (lower != 0.0 || upper != 1.0) throw SpecError("boolean feature domain must be [0, 1]");
    return boolean();
  case FeatureKind::integer: return integer(lower, upper);
  case FeatureKind::real: return real(lower, upper);
  }
  throw SpecError("unknown feature kind");
}

bool FeatureDomain::contains(double value) const {
  if (!std::isfinite(value) || value < lower_ || value > upper_) return false;
  return kind_ == FeatureKind::real || is_integral(value);
}

bool point_leq(const Point &a, const Point &b) {
  if (a.size() != b.size()) {
    throw InputError("point_leq: arity mismatch (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] <= b[i])) return false;
  }
  return true;
}

FeatureSpace::FeatureSpace(std::vector<FeatureDomain> domains, std::vector<std::string> names)
    : domains_(std::move(domains)), names_(std::move(names)) {
  if (domains_.empty()) throw SpecError("feature space needs at least one feature");
  if (names_.empty()) {
    names_.reserve(domains_.size());
    for (std::size_t i = 0; i < domains_.size(); ++i) names_.push_back("x" + std::to_string(i + 1));
  } else if (names_.size() != domains_.size()) {
    throw SpecError("feature name count (" + std::to_string(names_.size()) +
                    ") differs from feature count (" + std::to_string(domains_.size()) + ")");
  }
}

Point FeatureSpace::lower_corner() const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto &d : domains_) out.push_back(d.lower());
  return Point(std::move(out));
}

Point FeatureSpace::upper_corner() const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto &d : domains_) out.push_back(d.upper());
  return Point(std::move(out));
}

bool FeatureSpace::contains(const Point &p) const {
  if (p.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!domains_[i].contains(p[i])) return false;
  }
  return true;
}

void FeatureSpace::validate(const Point &p) const {
  if (p.size() != size()) {
    throw InputError("instance has " + std::to_string(p.size()) + " values, feature space has " +
                     std::to_string(size()));
  }
  for (std::size_t i = 0; i < size(); ++i) {
    const auto &d = domains_[i];
    if (!d.contains(p[i])) {
      std::ostringstream msg;
      msg << "feature " << (i + 1) << " (" << names_[i] << ") value " << p[i] << " is outside its "
          << to_string(d.kind()) << " domain [" << d.lower() << ", " << d.upper() << "]";
      throw InputError(msg.str());
    }
  }
}

ClassOrder::ClassOrder(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw SpecError("class order needs at least one label");
  std::set<std::string_view> seen;
  for (const auto &l : labels_) {
    if (!seen.insert(l).second) throw SpecError("duplicate class label '" + l + "'");
  }
}

std::optional<ClassRank> ClassOrder::rank_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<ClassRank>(it - labels_.begin());
}

FeatureSet::FeatureSet(std::size_t universe, std::initializer_list<std::size_t> members)
    : bits_(universe, false) {
  for (auto i : members) insert(i);
}

FeatureSet FeatureSet::all(std::size_t universe) {
  FeatureSet s(universe);
  s.bits_.assign(universe, true);
  return s;
}

FeatureSet FeatureSet::from_indices(std::size_t universe, std::span<const std::size_t> members) {
  FeatureSet s(universe);
  for (auto i : members) s.insert(i);
  return s;
}

void FeatureSet::insert(std::size_t i) {
  if (i >= bits_.size()) {
    throw InputError("feature index " + std::to_string(i + 1) + " out of range 1.." +
                     std::to_string(bits_.size()));
  }
  bits_[i] = true;
}

void FeatureSet::erase(std::size_t i) {
  if (i < bits_.size()) bits_[i] = false;
}

std::size_t FeatureSet::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<std::size_t> FeatureSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FeatureSet::one_based() const {
  auto out = indices();
  for (auto &i : out) ++i;
  return out;
}

FeatureSet FeatureSet::complement() const {
  FeatureSet s(universe());
  for (std::size_t i = 0; i < bits_.size(); ++i) s.bits_[i] = !bits_[i];
  return s;
}

bool FeatureSet::is_subset_of(const FeatureSet &other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.contains(i)) return false;
  }
  return true;
}

bool FeatureSet::intersects(const FeatureSet &other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && other.contains(i)) return true;
  }
  return false;
}

bool operator<(const FeatureSet &a, const FeatureSet &b) {
  const auto sa = a.size();
  const auto sb = b.size();
  if (sa != sb) return sa < sb;
  return a.indices() < b.indices();
}

std::string_view to_string(ExplanationKind kind) {
  return kind == ExplanationKind::axp ? "axp" : "cxp";
}

Corners corner_points(const FeatureSpace &space, const Point &v, const FeatureSet &fixed) {
  if (v.size() != space.size() || fixed.universe() != space.size()) {
    throw InputError("corner_points: arity mismatch");
  }
  Corners c{v, v};
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!fixed.contains(i)) {
      c.lower[i] = space.lower(i);
      c.upper[i] = space.upper(i);
    }
  }
  return c;
}

} // namespace monoxp
