#include "monoxp/cli/bench.hpp"

#include "monoxp/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace monoxp::cli {

using nlohmann::json;

namespace {

struct Row {
  std::size_t line;
  Point instance;
};

bool blank(const std::string &s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

double seconds(std::chrono::nanoseconds ns) { return std::chrono::duration<double>(ns).count(); }

BenchInstance run_one(Oracle &oracle, const Row &row, const BenchOptions &options) {
  EnumerationOptions eo;
  eo.limit = options.limit;
  eo.budget = options.budget;
  const auto report = enumerate(oracle, row.instance, eo);

  BenchInstance out;
  out.line = row.line;
  out.instance = row.instance;
  out.prediction = oracle.classify_label(row.instance);
  out.axps = report.axps.size();
  out.cxps = report.cxps.size();
  for (const auto &e : report.axps) {
    out.axp_size_total += e.features.size();
    out.axp_size_max = std::max(out.axp_size_max, e.features.size());
  }
  for (const auto &e : report.cxps) {
    out.cxp_size_total += e.features.size();
    out.cxp_size_max = std::max(out.cxp_size_max, e.features.size());
  }
  out.oracle_calls = report.oracle_calls;
  out.sat_calls = report.sat_calls;
  out.classify_seconds = seconds(report.classify_time);
  out.total_seconds = seconds(report.elapsed);
  out.complete = report.complete;
  return out;
}

std::optional<double> ratio(double num, double den) {
  if (den == 0.0) return std::nullopt;
  return num / den;
}

json optional_number(const std::optional<double> &x) { return x ? json(*x) : json(nullptr); }

} // namespace

BenchAggregate aggregate(const std::vector<BenchInstance> &instances) {
  BenchAggregate agg;
  std::size_t axp_sizes = 0;
  std::size_t cxp_sizes = 0;
  std::size_t oracle_calls = 0;
  std::size_t sat_calls = 0;
  for (const auto &r : instances) {
    ++agg.instances;
    if (!r.complete) ++agg.incomplete;
    agg.total_axps += r.axps;
    agg.total_cxps += r.cxps;
    axp_sizes += r.axp_size_total;
    cxp_sizes += r.cxp_size_total;
    agg.max_axp_size = std::max(agg.max_axp_size, r.axp_size_max);
    agg.max_cxp_size = std::max(agg.max_cxp_size, r.cxp_size_max);
    oracle_calls += r.oracle_calls;
    sat_calls += r.sat_calls;
    agg.classify_seconds += r.classify_seconds;
    agg.total_seconds += r.total_seconds;
  }
  const auto n = static_cast<double>(agg.instances);
  agg.avg_axps = ratio(static_cast<double>(agg.total_axps), n);
  agg.avg_cxps = ratio(static_cast<double>(agg.total_cxps), n);
  agg.avg_axp_size = ratio(static_cast<double>(axp_sizes), static_cast<double>(agg.total_axps));
  agg.avg_cxp_size = ratio(static_cast<double>(cxp_sizes), static_cast<double>(agg.total_cxps));
  agg.avg_oracle_calls = ratio(static_cast<double>(oracle_calls), n);
  agg.avg_sat_calls = ratio(static_cast<double>(sat_calls), n);
  if (const auto share = ratio(agg.classify_seconds, agg.total_seconds)) {
    agg.classify_share_pct = 100.0 * *share;
  }
  return agg;
}

BenchResult run_bench(const ClassifierSpec &spec, std::istream &csv, const BenchOptions &options) {
  BenchResult result;
  std::vector<Row> rows;
  std::string line;
  for (std::size_t lineno = 1; std::getline(csv, line); ++lineno) {
    if (blank(line)) continue;
    try {
      rows.push_back({lineno, parse_instance(line, spec.space)});
    } catch (const InputError &e) {
      // A non-numeric first row is a header.
      const bool header = lineno == 1 && std::string(e.what()).find("not a decimal") != std::string::npos;
      if (!header) result.errors.push_back({lineno, e.what()});
    }
  }

  result.instances.resize(rows.size());
  const auto workers = std::max<std::size_t>(1, std::min(options.parallel, rows.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    try {
      auto oracle = spec.factory();
      for (auto i = next++; i < rows.size(); i = next++) {
        result.instances[i] = run_one(*oracle, rows[i], options);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = rows.size();
    }
  };
  if (workers == 1) {
    if (!rows.empty()) work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  result.aggregate = aggregate(result.instances);
  return result;
}

json to_json(const BenchInstance &row) {
  return {
      {"schema", 1},
      {"type", "bench_instance"},
      {"line", row.line},
      {"instance", std::vector<double>(row.instance.begin(), row.instance.end())},
      {"prediction", row.prediction},
      {"axps", row.axps},
      {"cxps", row.cxps},
      {"axp_size_total", row.axp_size_total},
      {"cxp_size_total", row.cxp_size_total},
      {"axp_size_max", row.axp_size_max},
      {"cxp_size_max", row.cxp_size_max},
      {"oracle_calls", row.oracle_calls},
      {"sat_calls", row.sat_calls},
      {"classify_seconds", row.classify_seconds},
      {"total_seconds", row.total_seconds},
      {"complete", row.complete},
  };
}

json to_json(const BenchAggregate &agg) {
  return {
      {"schema", 1},
      {"type", "bench_aggregate"},
      {"instances", agg.instances},
      {"incomplete", agg.incomplete},
      {"total_axps", agg.total_axps},
      {"total_cxps", agg.total_cxps},
      {"avg_axps", optional_number(agg.avg_axps)},
      {"avg_cxps", optional_number(agg.avg_cxps)},
      {"avg_axp_size", optional_number(agg.avg_axp_size)},
      {"avg_cxp_size", optional_number(agg.avg_cxp_size)},
      {"max_axp_size", agg.max_axp_size},
      {"max_cxp_size", agg.max_cxp_size},
      {"avg_oracle_calls", optional_number(agg.avg_oracle_calls)},
      {"avg_sat_calls", optional_number(agg.avg_sat_calls)},
      {"classify_seconds", agg.classify_seconds},
      {"total_seconds", agg.total_seconds},
      {"classify_share_pct", optional_number(agg.classify_share_pct)},
  };
}

BenchInstance bench_instance_from_json(const json &record) {
  BenchInstance r;
  r.line = record.at("line").get<std::size_t>();
  r.instance = Point(record.at("instance").get<std::vector<double>>());
  r.prediction = record.at("prediction").get<std::string>();
  r.axps = record.at("axps").get<std::size_t>();
  r.cxps = record.at("cxps").get<std::size_t>();
  r.axp_size_total = record.at("axp_size_total").get<std::size_t>();
  r.cxp_size_total = record.at("cxp_size_total").get<std::size_t>();
  r.axp_size_max = record.at("axp_size_max").get<std::size_t>();
  r.cxp_size_max = record.at("cxp_size_max").get<std::size_t>();
  r.oracle_calls = record.at("oracle_calls").get<std::size_t>();
  r.sat_calls = record.at("sat_calls").get<std::size_t>();
  r.classify_seconds = record.at("classify_seconds").get<double>();
  r.total_seconds = record.at("total_seconds").get<double>();
  r.complete = record.at("complete").get<bool>();
  return r;
}

} // namespace monoxp::cli
