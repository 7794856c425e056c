#include "monoxp/errors.hpp"
#include "monoxp/oracle.hpp"

namespace monoxp {

namespace {

bool corners_agree(Oracle &oracle, const Point &v, const FeatureSet &fixed) {
  const auto box = corner_points(oracle.space(), v, fixed);
  return oracle.classify(box.lower) == oracle.classify(box.upper);
}

void check_arity(const Oracle &oracle, const Point &v, const FeatureSet &s) {
  if (v.size() != oracle.arity() || s.universe() != oracle.arity()) {
    throw InputError("explanation check: arity mismatch with classifier (" +
                     std::to_string(oracle.arity()) + " features)");
  }
}

} // namespace

bool verify_axp(Oracle &oracle, const Point &v, const FeatureSet &fixed) {
  check_arity(oracle, v, fixed);
  return corners_agree(oracle, v, fixed);
}

bool verify_cxp(Oracle &oracle, const Point &v, const FeatureSet &freed) {
  check_arity(oracle, v, freed);
  return !corners_agree(oracle, v, freed.complement());
}

MinimalityCheck check_explanation(Oracle &oracle, const Point &v, const Explanation &e) {
  const auto verify = [&](const FeatureSet &s) {
    return e.kind == ExplanationKind::axp ? verify_axp(oracle, v, s) : verify_cxp(oracle, v, s);
  };
  MinimalityCheck out;
  out.holds = verify(e.features);
  if (!out.holds) return out;
  for (auto i : e.features.indices()) {
    auto smaller = e.features;
    smaller.erase(i);
    if (verify(smaller)) out.redundant.push_back(i);
  }
  out.minimal = out.redundant.empty();
  return out;
}

} // namespace monoxp
