#pragma once

// Declarative classifier spec files (JSON, "schema": 1).
//
//   {
//     "schema": 1,
//     "kind": "grade" | "linear" | "monotone-dnf" | "appendix-cnf" | "external",
//     "features": [{"name": "Q", "kind": "real", "lower": 0, "upper": 10}, ...],
//     "classes": ["F", "E", ...],             // lowest rank first
//     ...kind-specific parameters
//   }
//
// Kind-specific parameters:
//   linear        "weights": [..], "thresholds": [..]
//   monotone-dnf  "terms": [[1, 2], [3]]      (1-based); "arity" may replace "features"
//   appendix-cnf  "k": 2, "clauses": [[1, 2], [-1, -2]]
//   external      "command": "python3 model.py"  or  ["./model", "--flag"]
//
// "features" and "classes" may be omitted where the kind implies them
// (grade, monotone-dnf, appendix-cnf).

#include "monoxp/oracle.hpp"

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace monoxp::cli {

inline constexpr int schema_version = 1;

struct ClassifierSpec {
  std::string kind;
  FeatureSpace space;
  ClassOrder classes;
  /// Builds a fresh, independent oracle each call.
  OracleFactory factory;
};

/// Throws SpecError describing the first problem found.
ClassifierSpec parse_classifier_spec(const nlohmann::json &document);
ClassifierSpec load_classifier_spec(const std::filesystem::path &path);

/// Parses "v1,v2,...,vN" and validates it against the space (InputError).
Point parse_instance(std::string_view text, const FeatureSpace &space);

/// Parses "1,2,4" into a 0-based feature set (InputError on bad indices).
FeatureSet parse_feature_list(std::string_view text, std::size_t arity);

/// Parses a 1-based permutation "2,1,3" into 0-based indices.
std::vector<std::size_t> parse_order(std::string_view text, std::size_t arity);

} // namespace monoxp::cli
