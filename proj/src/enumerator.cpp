#include "monoxp/enumerator.hpp"

#include "monoxp/classifiers.hpp"
#include "monoxp/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace monoxp {

namespace {

std::string describe_fixed(const FeatureSet &fixed) {
  std::string out = "{";
  for (auto i : fixed.one_based()) {
    if (out.size() > 1) out += ",";
    out += std::to_string(i);
  }
  return out + "}";
}

sat::Clause blocking_clause(const Explanation &e) {
  std::vector<sat::Literal> lits;
  for (auto i : e.features.indices()) {
    const auto var = static_cast<sat::Literal>(i + 1);
    lits.push_back(e.kind == ExplanationKind::axp ? var : -var);
  }
  return sat::Clause(std::move(lits));
}

} // namespace

EnumerationReport enumerate(Oracle &oracle, const Point &v, const EnumerationOptions &options) {
  const auto start = std::chrono::steady_clock::now();
  const auto &space = oracle.space();
  space.validate(v);
  const auto n = space.size();

  CountingOracle counter(oracle);
  sat::Solver solver(options.solver);
  EnumerationReport report;
  report.blocking = sat::CnfFormula(n);
  std::set<FeatureSet> seen_axps;
  std::set<FeatureSet> seen_cxps;

  const auto found = [&] { return report.axps.size() + report.cxps.size(); };
  const auto over_budget = [&] {
    return options.budget && std::chrono::steady_clock::now() - start >= *options.budget;
  };

  for (;;) {
    const bool at_limit = options.limit && found() >= *options.limit;
    if (!at_limit && found() > 0 && over_budget()) break;

    const auto result = solver.solve(report.blocking);
    ++report.sat_calls;
    if (!result) {
      report.complete = true;
      break;
    }
    if (at_limit) break;

    FeatureSet fixed(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!result.model[i]) fixed.insert(i);
    }
    const auto box = corner_points(space, v, fixed);
    const bool prediction_pinned = counter.classify(box.lower) == counter.classify(box.upper);

    SearchOptions search;
    search.order = options.order;
    Explanation e;
    try {
      if (prediction_pinned) {
        search.seed = fixed.complement();
        e = find_axp(counter, v, search);
      } else {
        search.seed = fixed;
        e = find_cxp(counter, v, search);
      }
    } catch (const SeedBreaksInvariant &err) {
      throw InconsistentOracle("seed from model with fixed features " + describe_fixed(fixed) +
                               " was rejected (" + err.what() + "); the classifier is not monotone");
    } catch (const NoCxpExists &err) {
      throw InconsistentOracle("model with fixed features " + describe_fixed(fixed) +
                               " admits a prediction change but " + err.what());
    }

    // An AXp must lie inside the fixed set, a CXp inside the free set.
    const auto &inside = prediction_pinned ? fixed : search.seed->complement();
    if (!e.features.is_subset_of(inside)) {
      throw InconsistentOracle("explanation escapes the model's partition");
    }
    auto &seen = prediction_pinned ? seen_axps : seen_cxps;
    if (!seen.insert(e.features).second) {
      throw InconsistentOracle("explanation " + describe_fixed(e.features) +
                               " was found twice; the classifier is not monotone");
    }

    report.blocking.add_clause(blocking_clause(e));
    (prediction_pinned ? report.axps : report.cxps).push_back(e);
    if (options.on_explanation) options.on_explanation(e);
  }

  report.oracle_calls = counter.call_count();
  report.classify_time = counter.inner_time();
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

DualityResult check_duality(const std::vector<Explanation> &axps,
                            const std::vector<Explanation> &cxps) {
  const auto check_family = [](const std::vector<Explanation> &hitters,
                               const std::vector<Explanation> &targets) -> DualityResult {
    const auto hits_all = [&](const FeatureSet &s) {
      return std::all_of(targets.begin(), targets.end(),
                         [&](const Explanation &t) { return s.intersects(t.features); });
    };
    for (const auto &h : hitters) {
      for (const auto &t : targets) {
        if (!h.features.intersects(t.features)) {
          return {false, h, DualityViolation::misses_set, t.features};
        }
      }
      for (auto i : h.features.indices()) {
        auto smaller = h.features;
        smaller.erase(i);
        if (hits_all(smaller)) return {false, h, DualityViolation::not_minimal, smaller};
      }
    }
    return {};
  };
  if (auto r = check_family(axps, cxps); !r) return r;
  return check_family(cxps, axps);
}

ExplanationFamilies brute_force_explanations(Oracle &oracle, const Point &v,
                                             std::size_t max_features) {
  const auto &space = oracle.space();
  space.validate(v);
  const auto n = space.size();
  if (n > max_features || n > 30) {
    throw InputError("brute force refused: " + std::to_string(n) + " features exceeds cap " +
                     std::to_string(std::min<std::size_t>(max_features, 30)));
  }
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const auto to_set = [n](std::uint64_t mask) {
    FeatureSet s(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) s.insert(i);
    }
    return s;
  };

  // sufficient[m]: fixing the features in m keeps the prediction.
  std::vector<bool> sufficient(full + 1);
  for (std::uint64_t m = 0; m <= full; ++m) sufficient[m] = verify_axp(oracle, v, to_set(m));

  ExplanationFamilies out;
  for (std::uint64_t m = 0; m <= full; ++m) {
    bool axp = sufficient[m];
    bool cxp = !sufficient[m];
    for (std::size_t i = 0; i < n && (axp || cxp); ++i) {
      const auto bit = std::uint64_t{1} << i;
      if (m & bit) {
        axp = axp && !sufficient[m & ~bit];
      } else {
        cxp = cxp && sufficient[m | bit];
      }
    }
    if (axp) out.axps.push_back({ExplanationKind::axp, to_set(m)});
    if (cxp) out.cxps.push_back({ExplanationKind::cxp, to_set(full & ~m)});
  }
  return out;
}

std::vector<FeatureSet> sorted_sets(const std::vector<Explanation> &explanations) {
  std::vector<FeatureSet> out;
  out.reserve(explanations.size());
  for (const auto &e : explanations) out.push_back(e.features);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace monoxp
