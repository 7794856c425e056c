// Python bindings. Feature indices are 1-based on the Python side.

#include "monoxp/classifiers.hpp"
#include "monoxp/cli/spec_file.hpp"
#include "monoxp/enumerator.hpp"
#include "monoxp/errors.hpp"
#include "monoxp/explainer.hpp"
#include "monoxp/external_oracle.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>

namespace py = pybind11;
using namespace monoxp;

namespace {

using Indices = std::vector<std::size_t>;

FeatureSet from_one_based(const Indices &idx, std::size_t n) {
  FeatureSet s(n);
  for (auto i : idx) {
    if (i < 1 || i > n) {
      throw InputError("feature index " + std::to_string(i) + " is not in 1.." + std::to_string(n));
    }
    s.insert(i - 1);
  }
  return s;
}

std::vector<std::size_t> order_from_one_based(const std::optional<Indices> &order) {
  std::vector<std::size_t> out;
  if (!order) return out;
  for (auto i : *order) {
    if (i < 1) throw InputError("feature order entries are 1-based");
    out.push_back(i - 1);
  }
  return out;
}

Point to_point(const std::vector<double> &x) { return Point(x); }

std::vector<Indices> families(const std::vector<Explanation> &es) {
  std::vector<Indices> out;
  for (const auto &f : sorted_sets(es)) out.push_back(f.one_based());
  return out;
}

std::vector<Explanation> to_explanations(const std::vector<Indices> &sets, ExplanationKind kind,
                                         std::size_t n) {
  std::vector<Explanation> out;
  for (const auto &s : sets) out.push_back({kind, from_one_based(s, n)});
  return out;
}

SearchOptions search_options(const std::optional<Indices> &order,
                             const std::optional<Indices> &seed, std::size_t n) {
  SearchOptions o;
  o.order = order_from_one_based(order);
  if (seed) o.seed = from_one_based(*seed, n);
  return o;
}

ExplanationKind kind_from(const std::string &kind) {
  if (kind == "axp") return ExplanationKind::axp;
  if (kind == "cxp") return ExplanationKind::cxp;
  throw InputError("explanation kind must be 'axp' or 'cxp', not '" + kind + "'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Formal explanations for monotonic classifiers";

  auto base = py::register_exception<Error>(m, "MonoxpError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base);
  py::register_exception<SpecError>(m, "SpecError", base);
  py::register_exception<OracleError>(m, "OracleError", base);
  py::register_exception<SeedBreaksInvariant>(m, "SeedBreaksInvariant", base);
  py::register_exception<NoCxpExists>(m, "NoCxpExists", base);
  py::register_exception<InconsistentOracle>(m, "InconsistentOracle", base);

  py::class_<FeatureDomain>(m, "FeatureDomain")
      .def_static("boolean", &FeatureDomain::boolean)
      .def_static("integer", &FeatureDomain::integer, py::arg("lower"), py::arg("upper"))
      .def_static("real", &FeatureDomain::real, py::arg("lower"), py::arg("upper"))
      .def_property_readonly("kind", [](const FeatureDomain &d) { return std::string(to_string(d.kind())); })
      .def_property_readonly("lower", &FeatureDomain::lower)
      .def_property_readonly("upper", &FeatureDomain::upper)
      .def("contains", &FeatureDomain::contains);

  py::class_<FeatureSpace>(m, "FeatureSpace")
      .def(py::init<std::vector<FeatureDomain>, std::vector<std::string>>(), py::arg("domains"),
           py::arg("names") = std::vector<std::string>{})
      .def("__len__", &FeatureSpace::size)
      .def_property_readonly("names", [](const FeatureSpace &s) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.name(i));
        return out;
      })
      .def_property_readonly("domains", &FeatureSpace::domains)
      .def("contains", [](const FeatureSpace &s, const std::vector<double> &x) {
        return s.contains(to_point(x));
      });

  py::class_<ClassOrder>(m, "ClassOrder")
      .def(py::init<std::vector<std::string>>(), py::arg("labels"))
      .def_property_readonly("labels", &ClassOrder::labels)
      .def("rank_of", &ClassOrder::rank_of);

  py::class_<Oracle>(m, "Oracle")
      .def_property_readonly("space", &Oracle::space, py::return_value_policy::reference_internal)
      .def_property_readonly("classes", &Oracle::classes, py::return_value_policy::reference_internal)
      .def_property_readonly("arity", &Oracle::arity)
      .def("classify", [](Oracle &o, const std::vector<double> &x) { return o.classify(to_point(x)); })
      .def("predict", [](Oracle &o, const std::vector<double> &x) {
        return o.classify_label(to_point(x));
      });

  py::class_<GradeClassifier, Oracle>(m, "GradeClassifier").def(py::init<>());

  py::class_<LinearThresholdClassifier, Oracle>(m, "LinearThresholdClassifier")
      .def(py::init<FeatureSpace, ClassOrder, std::vector<double>, std::vector<double>>(),
           py::arg("space"), py::arg("classes"), py::arg("weights"), py::arg("thresholds"));

  py::class_<MonotoneDnfClassifier, Oracle>(m, "MonotoneDnfClassifier")
      .def(py::init([](std::size_t arity, const std::vector<Indices> &terms) {
             std::vector<FeatureSet> sets;
             for (const auto &t : terms) sets.push_back(from_one_based(t, arity));
             return std::make_unique<MonotoneDnfClassifier>(arity, std::move(sets));
           }),
           py::arg("arity"), py::arg("terms"));

  py::class_<AppendixCnfClassifier, Oracle>(m, "AppendixCnfClassifier")
      .def(py::init<std::size_t, LiteralClauses>(), py::arg("k"), py::arg("clauses"));

  py::class_<CallableOracle, Oracle>(m, "CallableOracle")
      .def(py::init([](FeatureSpace space, ClassOrder classes, py::function fn) {
             auto order = classes;
             return std::make_unique<CallableOracle>(
                 std::move(space), std::move(classes),
                 [fn = std::move(fn), order](const Point &x) -> ClassRank {
                   py::gil_scoped_acquire gil;
                   const auto result = fn(std::vector<double>(x.begin(), x.end()));
                   if (py::isinstance<py::str>(result)) {
                     const auto label = result.cast<std::string>();
                     const auto rank = order.rank_of(label);
                     if (!rank) throw OracleError("callable returned unknown label '" + label + "'");
                     return *rank;
                   }
                   return result.cast<ClassRank>();
                 });
           }),
           py::arg("space"), py::arg("classes"), py::arg("fn"),
           "fn receives the feature values and returns a label or a class rank.");

  py::class_<ExternalProcessOracle, Oracle>(m, "ExternalProcessOracle")
      .def(py::init<FeatureSpace, ClassOrder, std::vector<std::string>>(), py::arg("space"),
           py::arg("classes"), py::arg("argv"))
      .def_property_readonly("pid", &ExternalProcessOracle::pid);

  py::class_<cli::ClassifierSpec>(m, "ClassifierSpec")
      .def_readonly("kind", &cli::ClassifierSpec::kind)
      .def_readonly("space", &cli::ClassifierSpec::space)
      .def_readonly("classes", &cli::ClassifierSpec::classes)
      .def("make_oracle", [](const cli::ClassifierSpec &s) { return s.factory(); });

  m.def("load_spec", &cli::load_classifier_spec, py::arg("path"));

  py::class_<Explanation>(m, "Explanation")
      .def_property_readonly("kind", [](const Explanation &e) { return std::string(to_string(e.kind)); })
      .def_property_readonly("features", [](const Explanation &e) { return e.features.one_based(); })
      .def("__repr__", [](const Explanation &e) {
        std::string out = "Explanation(" + std::string(to_string(e.kind)) + ", {";
        bool first = true;
        for (auto i : e.features.one_based()) {
          out += (first ? "" : ",") + std::to_string(i);
          first = false;
        }
        return out + "})";
      });

  m.def(
      "find_axp",
      [](Oracle &o, const std::vector<double> &v, std::optional<Indices> order,
         std::optional<Indices> seed) {
        return find_axp(o, to_point(v), search_options(order, seed, o.arity()));
      },
      py::arg("oracle"), py::arg("instance"), py::arg("order") = py::none(),
      py::arg("seed") = py::none());

  m.def(
      "find_cxp",
      [](Oracle &o, const std::vector<double> &v, std::optional<Indices> order,
         std::optional<Indices> seed) {
        return find_cxp(o, to_point(v), search_options(order, seed, o.arity()));
      },
      py::arg("oracle"), py::arg("instance"), py::arg("order") = py::none(),
      py::arg("seed") = py::none());

  py::class_<EnumerationReport>(m, "EnumerationReport")
      .def_property_readonly("axps", [](const EnumerationReport &r) { return families(r.axps); })
      .def_property_readonly("cxps", [](const EnumerationReport &r) { return families(r.cxps); })
      .def_readonly("sat_calls", &EnumerationReport::sat_calls)
      .def_readonly("oracle_calls", &EnumerationReport::oracle_calls)
      .def_readonly("complete", &EnumerationReport::complete)
      .def_property_readonly("elapsed_seconds", [](const EnumerationReport &r) {
        return std::chrono::duration<double>(r.elapsed).count();
      });

  m.def(
      "enumerate",
      [](Oracle &o, const std::vector<double> &v, std::optional<std::size_t> limit,
         std::optional<double> budget, std::optional<Indices> order) {
        EnumerationOptions options;
        options.limit = limit;
        if (budget) {
          options.budget = std::chrono::duration_cast<std::chrono::nanoseconds>(
              std::chrono::duration<double>(*budget));
        }
        options.order = order_from_one_based(order);
        return enumerate(o, to_point(v), options);
      },
      py::arg("oracle"), py::arg("instance"), py::arg("limit") = py::none(),
      py::arg("budget") = py::none(), py::arg("order") = py::none(),
      "Lists every AXp and CXp. Families come back as sorted lists of 1-based index lists.");

  m.def(
      "verify_axp",
      [](Oracle &o, const std::vector<double> &v, const Indices &features) {
        return verify_axp(o, to_point(v), from_one_based(features, o.arity()));
      },
      py::arg("oracle"), py::arg("instance"), py::arg("features"));

  m.def(
      "verify_cxp",
      [](Oracle &o, const std::vector<double> &v, const Indices &features) {
        return verify_cxp(o, to_point(v), from_one_based(features, o.arity()));
      },
      py::arg("oracle"), py::arg("instance"), py::arg("features"));

  m.def(
      "check_explanation",
      [](Oracle &o, const std::vector<double> &v, const std::string &kind, const Indices &features) {
        const auto r = check_explanation(
            o, to_point(v), {kind_from(kind), from_one_based(features, o.arity())});
        Indices redundant;
        for (auto i : r.redundant) redundant.push_back(i + 1);
        py::dict out;
        out["holds"] = r.holds;
        out["minimal"] = r.holds && r.minimal;
        out["redundant"] = redundant;
        return out;
      },
      py::arg("oracle"), py::arg("instance"), py::arg("kind"), py::arg("features"));

  m.def(
      "check_duality",
      [](const std::vector<Indices> &axps, const std::vector<Indices> &cxps) {
        std::size_t n = 0;
        for (const auto *family : {&axps, &cxps}) {
          for (const auto &s : *family) {
            for (auto i : s) n = std::max(n, i);
          }
        }
        return static_cast<bool>(check_duality(to_explanations(axps, ExplanationKind::axp, n),
                                               to_explanations(cxps, ExplanationKind::cxp, n)));
      },
      py::arg("axps"), py::arg("cxps"),
      "True iff each family is exactly the minimal hitting sets the other needs.");

  m.def(
      "brute_force",
      [](Oracle &o, const std::vector<double> &v, std::size_t max_features) {
        const auto f = brute_force_explanations(o, to_point(v), max_features);
        return std::make_pair(families(f.axps), families(f.cxps));
      },
      py::arg("oracle"), py::arg("instance"), py::arg("max_features") = 16);

  m.def(
      "probe_monotonicity",
      [](Oracle &o, std::size_t trials, std::uint64_t seed) {
        py::list out;
        for (const auto &v : probe_monotonicity(o, trials, seed)) {
          py::dict d;
          d["lower"] = std::vector<double>(v.lower.begin(), v.lower.end());
          d["upper"] = std::vector<double>(v.upper.begin(), v.upper.end());
          d["lower_prediction"] = o.classes().label(v.lower_rank);
          d["upper_prediction"] = o.classes().label(v.upper_rank);
          out.append(d);
        }
        return out;
      },
      py::arg("oracle"), py::arg("trials") = 1000, py::arg("seed") = 0);
}
