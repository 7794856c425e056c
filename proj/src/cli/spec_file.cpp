#include "monoxp/cli/spec_file.hpp"

#include "monoxp/classifiers.hpp"
#include "monoxp/errors.hpp"
#include "monoxp/external_oracle.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>

namespace monoxp::cli {

using nlohmann::json;

namespace {

const json &require(const json &doc, const char *key) {
  if (!doc.contains(key)) throw SpecError(std::string("classifier spec is missing \"") + key + "\"");
  return doc.at(key);
}

double require_number(const json &value, const std::string &what) {
  if (!value.is_number()) throw SpecError(what + " must be a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw SpecError(what + " must be finite");
  return x;
}

std::vector<double> number_list(const json &value, const std::string &what) {
  if (!value.is_array()) throw SpecError(what + " must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(require_number(value[i], what + "[" + std::to_string(i) + "]"));
  }
  return out;
}

FeatureSpace parse_features(const json &value) {
  if (!value.is_array() || value.empty()) throw SpecError("\"features\" must be a non-empty array");
  std::vector<FeatureDomain> domains;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const auto &f = value[i];
    const auto where = "feature " + std::to_string(i + 1);
    if (!f.is_object()) throw SpecError(where + " must be an object");
    names.push_back(f.value("name", "x" + std::to_string(i + 1)));
    const auto kind_text = f.value("kind", std::string("real"));
    const auto kind = feature_kind_from_string(kind_text);
    if (!kind) throw SpecError(where + " has unknown kind '" + kind_text + "'");
    if (*kind == FeatureKind::boolean && !f.contains("lower") && !f.contains("upper")) {
      domains.push_back(FeatureDomain::boolean());
      continue;
    }
    if (!f.contains("lower") || !f.contains("upper") || f["lower"].is_null() ||
        f["upper"].is_null()) {
      throw SpecError(where + " (" + names.back() + ") needs finite \"lower\" and \"upper\" bounds");
    }
    try {
      domains.push_back(FeatureDomain::make(*kind, require_number(f["lower"], where + " lower"),
                                            require_number(f["upper"], where + " upper")));
    } catch (const SpecError &e) {
      throw SpecError(where + " (" + names.back() + "): " + e.what());
    }
  }
  return FeatureSpace(std::move(domains), std::move(names));
}

ClassOrder parse_classes(const json &value) {
  if (!value.is_array()) throw SpecError("\"classes\" must be an array of labels");
  std::vector<std::string> labels;
  for (const auto &l : value) {
    if (!l.is_string()) throw SpecError("class labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  return ClassOrder(std::move(labels));
}

FeatureSpace boolean_features(std::size_t arity) {
  return FeatureSpace(std::vector<FeatureDomain>(arity, FeatureDomain::boolean()));
}

ClassifierSpec grade_spec(const json &doc) {
  auto space = doc.contains("features") ? parse_features(doc["features"])
                                        : GradeClassifier::default_space();
  auto classes = doc.contains("classes") ? parse_classes(doc["classes"])
                                         : GradeClassifier::default_classes();
  GradeClassifier probe(space, classes);
  return {"grade", space, classes,
          [space, classes] { return std::make_unique<GradeClassifier>(space, classes); }};
}

ClassifierSpec linear_spec(const json &doc) {
  auto space = parse_features(require(doc, "features"));
  auto classes = parse_classes(require(doc, "classes"));
  auto weights = number_list(require(doc, "weights"), "weights");
  auto thresholds = number_list(require(doc, "thresholds"), "thresholds");
  LinearThresholdClassifier probe(space, classes, weights, thresholds);
  return {"linear", space, classes, [=] {
            return std::make_unique<LinearThresholdClassifier>(space, classes, weights, thresholds);
          }};
}

ClassifierSpec dnf_spec(const json &doc) {
  FeatureSpace space;
  if (doc.contains("features")) {
    space = parse_features(doc["features"]);
  } else {
    const auto &arity = require(doc, "arity");
    if (!arity.is_number_unsigned() || arity.get<std::size_t>() == 0) {
      throw SpecError("\"arity\" must be a positive integer");
    }
    space = boolean_features(arity.get<std::size_t>());
  }
  auto classes = doc.contains("classes") ? parse_classes(doc["classes"]) : ClassOrder({"0", "1"});
  const auto &terms_json = require(doc, "terms");
  if (!terms_json.is_array()) throw SpecError("\"terms\" must be an array of index arrays");
  std::vector<FeatureSet> terms;
  for (const auto &t : terms_json) {
    if (!t.is_array()) throw SpecError("each term must be an array of feature indices");
    FeatureSet term(space.size());
    for (const auto &idx : t) {
      if (!idx.is_number_integer() || idx.get<long long>() < 1 ||
          idx.get<long long>() > static_cast<long long>(space.size())) {
        throw SpecError("term index " + idx.dump() + " outside 1.." + std::to_string(space.size()));
      }
      term.insert(idx.get<std::size_t>() - 1);
    }
    terms.push_back(std::move(term));
  }
  MonotoneDnfClassifier probe(space, classes, terms);
  return {"monotone-dnf", space, classes,
          [=] { return std::make_unique<MonotoneDnfClassifier>(space, classes, terms); }};
}

ClassifierSpec appendix_spec(const json &doc) {
  const auto &kj = require(doc, "k");
  if (!kj.is_number_unsigned()) throw SpecError("\"k\" must be a positive integer");
  const auto k = kj.get<std::size_t>();
  LiteralClauses clauses;
  const auto &cj = require(doc, "clauses");
  if (!cj.is_array()) throw SpecError("\"clauses\" must be an array of literal arrays");
  for (const auto &c : cj) {
    if (!c.is_array()) throw SpecError("each clause must be an array of literals");
    std::vector<int> lits;
    for (const auto &l : c) {
      if (!l.is_number_integer()) throw SpecError("literals must be nonzero integers");
      lits.push_back(l.get<int>());
    }
    clauses.push_back(std::move(lits));
  }
  AppendixCnfClassifier probe(k, clauses);
  if (doc.contains("features") && parse_features(doc["features"]) != probe.space()) {
    throw SpecError("appendix-cnf features must be " + std::to_string(2 * k) + " booleans");
  }
  if (doc.contains("classes") && parse_classes(doc["classes"]) != probe.classes()) {
    throw SpecError("appendix-cnf classes must be [\"0\", \"1\"]");
  }
  return {"appendix-cnf", probe.space(), probe.classes(),
          [=] { return std::make_unique<AppendixCnfClassifier>(k, clauses); }};
}

ClassifierSpec external_spec(const json &doc) {
  auto space = parse_features(require(doc, "features"));
  auto classes = parse_classes(require(doc, "classes"));
  const auto &cmd = require(doc, "command");
  std::vector<std::string> argv;
  if (cmd.is_string()) {
    argv = ExternalProcessOracle::shell(cmd.get<std::string>());
  } else if (cmd.is_array() && !cmd.empty()) {
    for (const auto &a : cmd) {
      if (!a.is_string()) throw SpecError("\"command\" array entries must be strings");
      argv.push_back(a.get<std::string>());
    }
  } else {
    throw SpecError("\"command\" must be a string or a non-empty array of strings");
  }
  return {"external", space, classes,
          [=] { return std::make_unique<ExternalProcessOracle>(space, classes, argv); }};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto comma = text.find(',');
    out.push_back(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::size_t parse_index(std::string_view field, std::size_t arity) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || value < 1 || value > arity) {
    throw InputError("feature index '" + std::string(field) + "' is not in 1.." +
                     std::to_string(arity));
  }
  return value - 1;
}

} // namespace

ClassifierSpec parse_classifier_spec(const json &document) {
  if (!document.is_object()) throw SpecError("classifier spec must be a JSON object");
  const auto &schema = require(document, "schema");
  if (!schema.is_number_integer() || schema.get<int>() != schema_version) {
    throw SpecError("unsupported classifier spec schema " + schema.dump() + " (expected " +
                    std::to_string(schema_version) + ")");
  }
  const auto &kind = require(document, "kind");
  if (!kind.is_string()) throw SpecError("\"kind\" must be a string");
  const auto k = kind.get<std::string>();
  if (k == "grade") return grade_spec(document);
  if (k == "linear") return linear_spec(document);
  if (k == "monotone-dnf") return dnf_spec(document);
  if (k == "appendix-cnf") return appendix_spec(document);
  if (k == "external") return external_spec(document);
  throw SpecError("unknown classifier kind '" + k + "'");
}

ClassifierSpec load_classifier_spec(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open classifier spec '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw SpecError("classifier spec '" + path.string() + "' is not valid JSON: " + e.what());
  }
  try {
    return parse_classifier_spec(doc);
  } catch (const json::exception &e) {
    throw SpecError("classifier spec '" + path.string() + "': " + e.what());
  }
}

Point parse_instance(std::string_view text, const FeatureSpace &space) {
  std::vector<double> values;
  for (auto field : split_commas(trim(text))) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw InputError("'" + std::string(field) + "' is not a decimal number");
    }
    values.push_back(x);
  }
  Point p(std::move(values));
  space.validate(p);
  return p;
}

FeatureSet parse_feature_list(std::string_view text, std::size_t arity) {
  FeatureSet out(arity);
  text = trim(text);
  if (text.empty()) return out;
  for (auto field : split_commas(text)) {
    const auto i = parse_index(field, arity);
    if (out.contains(i)) throw InputError("feature " + std::to_string(i + 1) + " listed twice");
    out.insert(i);
  }
  return out;
}

std::vector<std::size_t> parse_order(std::string_view text, std::size_t arity) {
  std::vector<std::size_t> out;
  for (auto field : split_commas(trim(text))) out.push_back(parse_index(field, arity));
  std::vector<bool> seen(arity, false);
  for (auto i : out) {
    if (seen[i]) throw InputError("feature order lists feature " + std::to_string(i + 1) + " twice");
    seen[i] = true;
  }
  if (out.size() != arity) throw InputError("feature order must list all " + std::to_string(arity) + " features");
  return out;
}

} // namespace monoxp::cli
