#include "monoxp/classifiers.hpp"

#include "monoxp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace monoxp {

// ---------------------------------------------------------------- grade

FeatureSpace GradeClassifier::default_space() {
  const auto mark = FeatureDomain::real(0.0, 10.0);
  return FeatureSpace({mark, mark, mark, mark}, {"Q", "X", "H", "R"});
}

ClassOrder GradeClassifier::default_classes() { return ClassOrder({"F", "E", "D", "C", "B", "A"}); }

GradeClassifier::GradeClassifier() : ClassifierBase(default_space(), default_classes()) {}

GradeClassifier::GradeClassifier(FeatureSpace space, ClassOrder classes)
    : ClassifierBase(std::move(space), std::move(classes)) {
  if (space_.size() != 4) throw SpecError("grade classifier has exactly 4 features");
  if (classes_.size() != 6) throw SpecError("grade classifier has exactly 6 classes");
  for (std::size_t i = 0; i < 4; ++i) {
    if (space_.lower(i) != 0.0 || space_.upper(i) != 10.0) {
      throw SpecError("grade classifier features range over [0, 10]");
    }
  }
}

double GradeClassifier::score(const Point &x) {
  return std::max(0.3 * x[0] + 0.6 * x[1] + 0.1 * x[2], x[3]);
}

ClassRank GradeClassifier::classify(const Point &x) {
  space_.validate(x);
  // Work in tenths so integer marks land exactly on the thresholds.
  const double s10 = std::max(3.0 * x[0] + 6.0 * x[1] + x[2], 10.0 * x[3]);
  if (s10 >= 90.0) return 5;
  if (s10 >= 70.0) return 4;
  if (s10 >= 50.0) return 3;
  if (s10 >= 40.0) return 2;
  if (s10 >= 20.0) return 1;
  return 0;
}

// ---------------------------------------------------------------- linear

LinearThresholdClassifier::LinearThresholdClassifier(FeatureSpace space, ClassOrder classes,
                                                     std::vector<double> weights,
                                                     std::vector<double> thresholds)
    : LinearThresholdClassifier(Unchecked{}, std::move(space), std::move(classes),
                                std::move(weights), std::move(thresholds)) {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] < 0.0) {
      throw SpecError("linear classifier weight " + std::to_string(i + 1) +
                      " is negative; monotonicity requires nonnegative weights");
    }
  }
}

LinearThresholdClassifier::LinearThresholdClassifier(Unchecked, FeatureSpace space,
                                                     ClassOrder classes,
                                                     std::vector<double> weights,
                                                     std::vector<double> thresholds)
    : ClassifierBase(std::move(space), std::move(classes)), weights_(std::move(weights)),
      thresholds_(std::move(thresholds)) {
  validate_shape();
}

void LinearThresholdClassifier::validate_shape() const {
  if (weights_.size() != space_.size()) {
    throw SpecError("linear classifier has " + std::to_string(weights_.size()) +
                    " weights for " + std::to_string(space_.size()) + " features");
  }
  if (thresholds_.size() + 1 != classes_.size()) {
    throw SpecError("linear classifier needs exactly one threshold fewer than classes");
  }
  for (std::size_t i = 1; i < thresholds_.size(); ++i) {
    if (!(thresholds_[i - 1] < thresholds_[i])) {
      throw SpecError("linear classifier thresholds must be strictly increasing");
    }
  }
}

ClassRank LinearThresholdClassifier::classify(const Point &x) {
  space_.validate(x);
  double s = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) s += weights_[i] * x[i];
  return static_cast<ClassRank>(
      std::upper_bound(thresholds_.begin(), thresholds_.end(), s) - thresholds_.begin());
}

// ---------------------------------------------------------------- dnf

namespace {

FeatureSpace boolean_space(std::size_t arity) {
  return FeatureSpace(std::vector<FeatureDomain>(arity, FeatureDomain::boolean()));
}

ClassOrder binary_classes() { return ClassOrder({"0", "1"}); }

} // namespace

MonotoneDnfClassifier::MonotoneDnfClassifier(std::size_t arity, std::vector<FeatureSet> terms)
    : MonotoneDnfClassifier(boolean_space(arity), binary_classes(), std::move(terms)) {}

MonotoneDnfClassifier::MonotoneDnfClassifier(FeatureSpace space, ClassOrder classes,
                                             std::vector<FeatureSet> terms)
    : ClassifierBase(std::move(space), std::move(classes)), terms_(std::move(terms)) {
  for (const auto &d : space_.domains()) {
    if (d.kind() != FeatureKind::boolean) throw SpecError("monotone DNF features must be boolean");
  }
  if (classes_.size() != 2) throw SpecError("monotone DNF classifier has exactly 2 classes");
  for (const auto &t : terms_) {
    if (t.universe() != space_.size()) throw SpecError("monotone DNF term arity mismatch");
  }
}

ClassRank MonotoneDnfClassifier::classify(const Point &x) {
  space_.validate(x);
  for (const auto &t : terms_) {
    bool all = true;
    for (auto i : t.indices()) {
      if (x[i] != 1.0) {
        all = false;
        break;
      }
    }
    if (all) return 1;
  }
  return 0;
}

MonotoneDnfClassifier random_monotone_dnf(std::size_t arity, std::size_t num_terms,
                                          std::mt19937_64 &rng) {
  if (arity == 0) throw InputError("random_monotone_dnf: arity must be positive");
  std::uniform_int_distribution<std::size_t> size_dist(1, arity);
  std::vector<std::size_t> pool(arity);
  std::vector<FeatureSet> drawn;
  for (std::size_t t = 0; t < num_terms; ++t) {
    for (std::size_t i = 0; i < arity; ++i) pool[i] = i;
    std::shuffle(pool.begin(), pool.end(), rng);
    const auto size = size_dist(rng);
    drawn.push_back(FeatureSet::from_indices(arity, std::span(pool).first(size)));
  }
  // Keep only the subset-minimal distinct terms.
  std::sort(drawn.begin(), drawn.end());
  drawn.erase(std::unique(drawn.begin(), drawn.end()), drawn.end());
  std::vector<FeatureSet> kept;
  for (const auto &t : drawn) {
    const bool covered =
        std::any_of(kept.begin(), kept.end(), [&](const FeatureSet &k) { return k.is_subset_of(t); });
    if (!covered) kept.push_back(t);
  }
  return MonotoneDnfClassifier(arity, std::move(kept));
}

// ---------------------------------------------------------------- appendix

std::optional<int> common_literal(const LiteralClauses &phi) {
  if (phi.empty()) return 1; // vacuously, every literal occurs in all clauses
  for (int lit : phi.front()) {
    const bool everywhere = std::all_of(phi.begin() + 1, phi.end(), [lit](const auto &c) {
      return std::find(c.begin(), c.end(), lit) != c.end();
    });
    if (everywhere) return lit;
  }
  return std::nullopt;
}

AppendixCnfClassifier::AppendixCnfClassifier(std::size_t k, LiteralClauses phi)
    : ClassifierBase(boolean_space(2 * std::max<std::size_t>(k, 1)), binary_classes()), k_(k),
      phi_(std::move(phi)) {
  if (k_ == 0) throw SpecError("appendix classifier needs k >= 1");
  for (const auto &clause : phi_) {
    std::vector<std::size_t> pos;
    for (int lit : clause) {
      const auto var = static_cast<std::size_t>(std::abs(lit));
      if (lit == 0 || var > k_) {
        throw SpecError("literal " + std::to_string(lit) + " out of range for k=" +
                        std::to_string(k_));
      }
      pos.push_back(lit > 0 ? var - 1 : var - 1 + k_);
    }
    positive_.push_back(std::move(pos));
  }
  if (const auto lit = common_literal(phi_)) {
    throw SpecError("formula is trivially satisfiable: literal " +
                    std::string(*lit < 0 ? "-x" : "x") + std::to_string(std::abs(*lit)) +
                    " occurs in every clause");
  }
}

ClassRank AppendixCnfClassifier::classify(const Point &x) {
  space_.validate(x);
  for (std::size_t i = 0; i < k_; ++i) {
    if (x[i] == 1.0 && x[i + k_] == 1.0) return 1;
  }
  for (const auto &clause : positive_) {
    const bool sat = std::any_of(clause.begin(), clause.end(), [&](auto i) { return x[i] == 1.0; });
    if (!sat) return 0;
  }
  return 1;
}

// ---------------------------------------------------------------- wrappers

ClassRank CallableOracle::classify(const Point &x) {
  const auto rank = fn_(x);
  if (rank >= classes_.size()) {
    throw OracleError("callable oracle returned rank " + std::to_string(rank) + " outside 0.." +
                      std::to_string(classes_.size() - 1));
  }
  return rank;
}

ClassRank CountingOracle::classify(const Point &x) {
  if (cache_enabled_) {
    if (const auto it = cache_.find(x); it != cache_.end()) {
      ++hits_;
      return it->second;
    }
  }
  const auto start = std::chrono::steady_clock::now();
  const auto rank = inner_.classify(x);
  inner_time_ += std::chrono::steady_clock::now() - start;
  ++calls_;
  if (cache_enabled_) cache_.emplace(x, rank);
  return rank;
}

void CountingOracle::reset_counters() {
  calls_ = 0;
  hits_ = 0;
  inner_time_ = std::chrono::nanoseconds{0};
}

// ---------------------------------------------------------------- probe

namespace {

double sample_in(const FeatureDomain &d, double lo, std::mt19937_64 &rng) {
  const double hi = d.upper();
  if (lo >= hi) return lo;
  if (d.kind() == FeatureKind::real) return std::uniform_real_distribution<double>(lo, hi)(rng);
  const auto a = static_cast<long long>(std::ceil(lo));
  const auto b = static_cast<long long>(hi);
  return static_cast<double>(std::uniform_int_distribution<long long>(a, b)(rng));
}

} // namespace

std::vector<MonotonicityViolation> probe_monotonicity(Oracle &oracle, std::size_t trials,
                                                      std::uint64_t seed) {
  const auto &space = oracle.space();
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(0.25);
  std::vector<MonotonicityViolation> out;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<double> a(space.size());
    std::vector<double> b(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
      const auto &d = space.domain(i);
      a[i] = sample_in(d, d.lower(), rng);
      b[i] = keep(rng) ? a[i] : sample_in(d, a[i], rng);
    }
    Point pa(std::move(a));
    Point pb(std::move(b));
    const auto ra = oracle.classify(pa);
    const auto rb = oracle.classify(pb);
    if (ra > rb) out.push_back({std::move(pa), std::move(pb), ra, rb});
  }
  return out;
}

} // namespace monoxp
