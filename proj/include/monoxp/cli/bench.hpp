#pragma once

#include "monoxp/cli/spec_file.hpp"
#include "monoxp/enumerator.hpp"

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace monoxp::cli {

/// Full enumeration of one CSV row.
struct BenchInstance {
  std::size_t line = 0;
  Point instance;
  std::string prediction;
  std::size_t axps = 0;
  std::size_t cxps = 0;
  std::size_t axp_size_total = 0;
  std::size_t cxp_size_total = 0;
  std::size_t axp_size_max = 0;
  std::size_t cxp_size_max = 0;
  std::size_t oracle_calls = 0;
  std::size_t sat_calls = 0;
  double classify_seconds = 0.0;
  double total_seconds = 0.0;
  bool complete = false;
};

struct BenchRowError {
  std::size_t line = 0;
  std::string message;
};

/// Column summary over all instances. Averages of explanation sizes are
/// pooled over explanations; other averages are per instance. Averages are
/// empty when their denominator is zero.
struct BenchAggregate {
  std::size_t instances = 0;
  std::size_t incomplete = 0;
  std::size_t total_axps = 0;
  std::size_t total_cxps = 0;
  std::optional<double> avg_axps;
  std::optional<double> avg_cxps;
  std::optional<double> avg_axp_size;
  std::optional<double> avg_cxp_size;
  std::size_t max_axp_size = 0;
  std::size_t max_cxp_size = 0;
  std::optional<double> avg_oracle_calls;
  std::optional<double> avg_sat_calls;
  double classify_seconds = 0.0;
  double total_seconds = 0.0;
  /// Share of total time spent inside the classifier, in percent.
  std::optional<double> classify_share_pct;

  friend bool operator==(const BenchAggregate &, const BenchAggregate &) = default;
};

struct BenchOptions {
  std::size_t parallel = 1;
  std::optional<std::size_t> limit;
  std::optional<std::chrono::nanoseconds> budget;
};

struct BenchResult {
  std::vector<BenchInstance> instances;
  std::vector<BenchRowError> errors;
  BenchAggregate aggregate;
};

/// Reads instances from CSV (one per row, optional header, blank lines
/// ignored) and enumerates each. Malformed rows are collected in `errors`
/// and skipped. Oracle failures propagate.
BenchResult run_bench(const ClassifierSpec &spec, std::istream &csv, const BenchOptions &options = {});

BenchAggregate aggregate(const std::vector<BenchInstance> &instances);

nlohmann::json to_json(const BenchInstance &row);
nlohmann::json to_json(const BenchAggregate &agg);
/// Inverse of to_json(BenchInstance), for recomputing aggregates from records.
BenchInstance bench_instance_from_json(const nlohmann::json &record);

} // namespace monoxp::cli
