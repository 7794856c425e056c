#pragma once

// Reference oracles for tests. Nothing here goes through corner checks,
// the explainer or the SAT solver: explanations are decided from the
// definitions by scanning every point of a boolean feature space.

#include "monoxp/classifiers.hpp"
#include "monoxp/domain.hpp"
#include "monoxp/sat.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <vector>

namespace monoxp::testing {

inline FeatureSpace booleans(std::size_t n) {
  return FeatureSpace(std::vector<FeatureDomain>(n, FeatureDomain::boolean()));
}

/// 1 iff at least two of three boolean features are set.
inline std::unique_ptr<LinearThresholdClassifier> majority3() {
  return std::make_unique<LinearThresholdClassifier>(booleans(3), ClassOrder({"0", "1"}),
                                                     std::vector<double>{1, 1, 1},
                                                     std::vector<double>{2});
}

/// Single-class classifier over `space`.
inline std::unique_ptr<LinearThresholdClassifier> constant(FeatureSpace space) {
  std::vector<double> w(space.size(), 1.0);
  return std::make_unique<LinearThresholdClassifier>(std::move(space), ClassOrder({"only"}),
                                                     std::move(w), std::vector<double>{});
}

inline Point point_of_mask(std::uint64_t mask, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i & 1U) ? 1.0 : 0.0;
  return Point(std::move(x));
}

inline FeatureSet set_of_mask(std::uint64_t mask, std::size_t n) {
  FeatureSet s(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (mask >> i & 1U) s.insert(i);
  }
  return s;
}

inline std::uint64_t mask_of_point(const Point &v) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 1.0) m |= std::uint64_t{1} << i;
  }
  return m;
}

/// Truth table of a boolean-space oracle, indexed by point mask.
inline std::vector<ClassRank> truth_table(Oracle &oracle) {
  const auto n = oracle.arity();
  std::vector<ClassRank> out(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < out.size(); ++m) out[m] = oracle.classify(point_of_mask(m, n));
  return out;
}

/// Fixing `fixed` to v forces the prediction: every completion agrees.
inline bool grid_sufficient(const std::vector<ClassRank> &table, std::size_t n, std::uint64_t v,
                            std::uint64_t fixed) {
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    if (((x ^ v) & fixed) == 0 && table[x] != table[v]) return false;
  }
  (void)n;
  return true;
}

struct Families {
  std::set<std::vector<std::size_t>> axps;
  std::set<std::vector<std::size_t>> cxps;
};

/// AXp's and CXp's of the prediction at boolean point v, straight from the
/// definitions over the full grid.
inline Families grid_explanations(Oracle &oracle, const Point &v) {
  const auto n = oracle.arity();
  const auto table = truth_table(oracle);
  const auto vm = mask_of_point(v);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<bool> suff(full + 1);
  for (std::uint64_t m = 0; m <= full; ++m) suff[m] = grid_sufficient(table, n, vm, m);

  Families out;
  for (std::uint64_t m = 0; m <= full; ++m) {
    bool min_axp = suff[m];
    for (std::size_t i = 0; i < n && min_axp; ++i) {
      if (m >> i & 1U) min_axp = !suff[m & ~(std::uint64_t{1} << i)];
    }
    if (min_axp) out.axps.insert(set_of_mask(m, n).indices());

    // Y = complement of m can change the prediction iff fixing m is insufficient.
    const std::uint64_t y = full & ~m;
    bool min_cxp = !suff[m];
    for (std::size_t i = 0; i < n && min_cxp; ++i) {
      if (y >> i & 1U) min_cxp = suff[m | (std::uint64_t{1} << i)];
    }
    if (min_cxp) out.cxps.insert(set_of_mask(y, n).indices());
  }
  return out;
}

inline std::set<std::vector<std::size_t>> index_sets(const std::vector<Explanation> &es) {
  std::set<std::vector<std::size_t>> out;
  for (const auto &e : es) out.insert(e.features.indices());
  return out;
}

/// Satisfiability by enumerating all 2^n assignments.
inline bool truth_table_sat(const sat::CnfFormula &f) {
  const auto n = f.num_vars();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::vector<bool> model(n);
    for (std::size_t i = 0; i < n; ++i) model[i] = m >> i & 1U;
    if (f.satisfied_by(model)) return true;
  }
  return false;
}

/// Satisfiability of signed-literal clauses over k variables, by enumeration.
inline bool truth_table_sat(const LiteralClauses &phi, std::size_t k) {
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    const bool all = std::all_of(phi.begin(), phi.end(), [&](const std::vector<int> &c) {
      return std::any_of(c.begin(), c.end(), [&](int lit) {
        const bool val = m >> (std::abs(lit) - 1) & 1U;
        return lit > 0 ? val : !val;
      });
    });
    if (all) return true;
  }
  return false;
}

/// Random CNF over k variables that is not trivially satisfiable.
inline LiteralClauses random_nontrivial_cnf(std::size_t k, std::mt19937_64 &rng) {
  std::uniform_int_distribution<std::size_t> clause_count(2, 2 + 2 * k);
  std::uniform_int_distribution<std::size_t> width(1, k);
  std::bernoulli_distribution negative(0.5);
  for (;;) {
    LiteralClauses phi(clause_count(rng));
    for (auto &c : phi) {
      std::vector<int> vars(k);
      for (std::size_t i = 0; i < k; ++i) vars[i] = static_cast<int>(i + 1);
      std::shuffle(vars.begin(), vars.end(), rng);
      vars.resize(width(rng));
      for (int var : vars) c.push_back(negative(rng) ? -var : var);
    }
    if (!common_literal(phi)) return phi;
  }
}

} // namespace monoxp::testing
