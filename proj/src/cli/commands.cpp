#include "monoxp/cli/commands.hpp"

#include "monoxp/classifiers.hpp"
#include "monoxp/cli/bench.hpp"
#include "monoxp/cli/spec_file.hpp"
#include "monoxp/enumerator.hpp"
#include "monoxp/errors.hpp"
#include "monoxp/explainer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>

namespace monoxp::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds(std::chrono::nanoseconds ns) { return std::chrono::duration<double>(ns).count(); }

void emit(std::ostream &out, const json &record) { out << record.dump() << '\n' << std::flush; }

json values_json(const Point &p) { return std::vector<double>(p.begin(), p.end()); }

json names_json(const FeatureSet &s, const FeatureSpace &space) {
  json names = json::array();
  for (auto i : s.indices()) names.push_back(space.name(i));
  return names;
}

json explanation_json(const FeatureSpace &space, const Point &v, const std::string &prediction,
                      const Explanation &e) {
  return {{"schema", schema_version},
          {"type", "explanation"},
          {"instance", values_json(v)},
          {"prediction", prediction},
          {"kind", to_string(e.kind)},
          {"features", e.features.one_based()},
          {"feature_names", names_json(e.features, space)}};
}

json error_json(std::string_view code, std::string_view message) {
  return {{"schema", schema_version}, {"type", "error"}, {"error", code}, {"message", message}};
}

std::optional<std::chrono::nanoseconds> budget_of(double secs) {
  if (secs <= 0.0) return std::nullopt;
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::duration<double>(secs));
}

struct Args {
  std::string spec;
  std::string instance;
  std::string kind = "axp";
  std::string order;
  std::string features;
  std::string dump_cnf;
  std::string instances;
  bool cache = false;
  std::size_t limit = 0;
  double budget = 0.0;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t parallel = 1;
};

ExplanationKind parse_kind(const std::string &kind) {
  return kind == "cxp" ? ExplanationKind::cxp : ExplanationKind::axp;
}

int cmd_explain(const Args &a, std::ostream &out) {
  const auto spec = load_classifier_spec(a.spec);
  const auto oracle = spec.factory();
  const auto v = parse_instance(a.instance, spec.space);
  SearchOptions search;
  if (!a.order.empty()) search.order = parse_order(a.order, spec.space.size());

  const auto start = Clock::now();
  CountingOracle counter(*oracle, a.cache);
  const auto prediction = spec.classes.label(counter.classify(v));
  const auto e = parse_kind(a.kind) == ExplanationKind::axp ? find_axp(counter, v, search)
                                                             : find_cxp(counter, v, search);
  auto record = explanation_json(spec.space, v, prediction, e);
  record["oracle_calls"] = counter.call_count();
  record["cache_hits"] = counter.cache_hits();
  record["sat_calls"] = 0;
  record["classify_seconds"] = seconds(counter.inner_time());
  record["total_seconds"] = seconds(Clock::now() - start);
  emit(out, record);
  return exit_ok;
}

int cmd_enumerate(const Args &a, std::ostream &out) {
  const auto spec = load_classifier_spec(a.spec);
  const auto oracle = spec.factory();
  const auto v = parse_instance(a.instance, spec.space);
  const auto prediction = oracle->classify_label(v);

  EnumerationOptions options;
  if (a.limit > 0) options.limit = a.limit;
  options.budget = budget_of(a.budget);
  if (!a.order.empty()) options.order = parse_order(a.order, spec.space.size());
  std::size_t index = 0;
  options.on_explanation = [&](const Explanation &e) {
    auto record = explanation_json(spec.space, v, prediction, e);
    record["index"] = index++;
    emit(out, record);
  };
  const auto report = enumerate(*oracle, v, options);

  if (!a.dump_cnf.empty()) {
    std::ofstream dump(a.dump_cnf);
    if (!dump) throw InputError("cannot write '" + a.dump_cnf + "'");
    dump << sat::to_dimacs(report.blocking);
  }
  emit(out, {{"schema", schema_version},
             {"type", "summary"},
             {"instance", values_json(v)},
             {"prediction", prediction},
             {"axps", report.axps.size()},
             {"cxps", report.cxps.size()},
             {"sat_calls", report.sat_calls},
             {"oracle_calls", report.oracle_calls},
             {"complete", report.complete},
             {"classify_seconds", seconds(report.classify_time)},
             {"total_seconds", seconds(report.elapsed)}});
  return exit_ok;
}

int cmd_verify(const Args &a, std::ostream &out) {
  const auto spec = load_classifier_spec(a.spec);
  const auto oracle = spec.factory();
  const auto v = parse_instance(a.instance, spec.space);
  const Explanation e{parse_kind(a.kind), parse_feature_list(a.features, spec.space.size())};
  CountingOracle counter(*oracle);
  const auto check = check_explanation(counter, v, e);

  json record = explanation_json(spec.space, v, counter.classify_label(v), e);
  record["type"] = "verify";
  record["holds"] = check.holds;
  record[e.kind == ExplanationKind::axp ? "sufficient" : "changes_prediction"] = check.holds;
  record["minimal"] = check.holds && check.minimal;
  json redundant = json::array();
  for (auto i : check.redundant) redundant.push_back(i + 1);
  record["redundant"] = redundant;
  record["oracle_calls"] = counter.call_count();
  emit(out, record);
  return exit_ok;
}

int cmd_probe(const Args &a, std::ostream &out, bool seed_given) {
  const auto spec = load_classifier_spec(a.spec);
  const auto oracle = spec.factory();
  auto seed = a.seed;
  if (!seed_given) {
    if (const char *env = std::getenv("MONOXP_SEED"); env != nullptr && *env != '\0') {
      seed = std::strtoull(env, nullptr, 10);
    }
  }
  const auto violations = probe_monotonicity(*oracle, a.trials, seed);
  json list = json::array();
  for (const auto &vio : violations) {
    list.push_back({{"lower", values_json(vio.lower)},
                    {"upper", values_json(vio.upper)},
                    {"lower_prediction", spec.classes.label(vio.lower_rank)},
                    {"upper_prediction", spec.classes.label(vio.upper_rank)}});
  }
  emit(out, {{"schema", schema_version},
             {"type", "probe"},
             {"trials", a.trials},
             {"seed", seed},
             {"violations", list},
             {"violation_count", violations.size()}});
  return exit_ok;
}

int cmd_bench(const Args &a, std::ostream &out) {
  const auto spec = load_classifier_spec(a.spec);
  std::ifstream csv(a.instances);
  if (!csv) throw InputError("cannot open instances file '" + a.instances + "'");
  BenchOptions options;
  options.parallel = std::max<std::size_t>(1, a.parallel);
  if (a.limit > 0) options.limit = a.limit;
  options.budget = budget_of(a.budget);
  const auto result = run_bench(spec, csv, options);
  for (const auto &err : result.errors) {
    emit(out, {{"schema", schema_version},
               {"type", "bench_error"},
               {"line", err.line},
               {"message", err.message}});
  }
  for (const auto &row : result.instances) emit(out, to_json(row));
  emit(out, to_json(result.aggregate));
  return exit_ok;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Formal abductive and contrastive explanations for monotonic classifiers", "monoxp"};
  app.require_subcommand(1);
  Args a;

  const auto add_spec = [&](CLI::App *sub) {
    sub->add_option("--spec", a.spec, "Classifier spec file (JSON)")->required();
  };
  const auto add_instance = [&](CLI::App *sub) {
    sub->add_option("--instance", a.instance, "Comma-separated feature values")->required();
  };
  const auto add_kind = [&](CLI::App *sub) {
    sub->add_option("--kind", a.kind, "Explanation kind")->check(CLI::IsMember({"axp", "cxp"}));
  };
  const auto add_order = [&](CLI::App *sub) {
    sub->add_option("--order", a.order, "Feature scan order, 1-based, comma-separated");
  };

  auto *explain = app.add_subcommand("explain", "Compute one AXp or CXp");
  add_spec(explain);
  add_instance(explain);
  add_kind(explain);
  add_order(explain);
  explain->add_flag("--cache", a.cache, "Memoize repeated classifier queries");

  auto *enumerate_cmd = app.add_subcommand("enumerate", "Enumerate all AXp's and CXp's");
  add_spec(enumerate_cmd);
  add_instance(enumerate_cmd);
  add_order(enumerate_cmd);
  enumerate_cmd->add_option("--limit", a.limit, "Stop after this many explanations");
  enumerate_cmd->add_option("--budget", a.budget, "Wall-clock budget in seconds");
  enumerate_cmd->add_option("--dump-cnf", a.dump_cnf, "Write the blocking clauses as DIMACS");

  auto *verify = app.add_subcommand("verify", "Check a feature set is an AXp/CXp");
  add_spec(verify);
  add_instance(verify);
  add_kind(verify);
  verify->add_option("--features", a.features, "1-based feature indices, comma-separated")
      ->required();

  auto *probe = app.add_subcommand("probe", "Search for monotonicity violations");
  add_spec(probe);
  probe->add_option("--trials", a.trials, "Number of sampled comparable pairs");
  auto *seed_opt = probe->add_option("--seed", a.seed, "RNG seed (default: $MONOXP_SEED or 0)");

  auto *bench = app.add_subcommand("bench", "Enumerate explanations for every CSV instance");
  add_spec(bench);
  bench->add_option("--instances", a.instances, "CSV file, one instance per row")->required();
  bench->add_option("--parallel", a.parallel, "Worker count, one classifier instance each");
  bench->add_option("--limit", a.limit, "Per-instance explanation limit");
  bench->add_option("--budget", a.budget, "Per-instance wall-clock budget in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*explain) return cmd_explain(a, out);
    if (*enumerate_cmd) return cmd_enumerate(a, out);
    if (*verify) return cmd_verify(a, out);
    if (*probe) return cmd_probe(a, out, seed_opt->count() > 0);
    if (*bench) return cmd_bench(a, out);
  } catch (const NoCxpExists &e) {
    emit(out, error_json("no_cxp", e.what()));
    return exit_no_explanation;
  } catch (const OracleError &e) {
    emit(out, error_json("oracle", e.what()));
    return exit_oracle_failure;
  } catch (const InconsistentOracle &e) {
    emit(out, error_json("inconsistent_oracle", e.what()));
    return exit_oracle_failure;
  } catch (const SeedBreaksInvariant &e) {
    emit(out, error_json("inconsistent_oracle", e.what()));
    return exit_oracle_failure;
  } catch (const SpecError &e) {
    emit(out, error_json("spec", e.what()));
    return exit_usage;
  } catch (const InputError &e) {
    emit(out, error_json("input", e.what()));
    return exit_usage;
  }
  return exit_usage;
}

} // namespace monoxp::cli
