#include "audit.hpp"
#include "monoxp/classifiers.hpp"
#include "monoxp/enumerator.hpp"
#include "monoxp/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace monoxp;
using namespace monoxp::testing;

namespace {

using Sets = std::set<std::vector<std::size_t>>;

Sets one_based(const std::vector<Explanation> &es) {
  Sets out;
  for (const auto &e : es) out.insert(e.features.one_based());
  return out;
}

Explanation axp(std::size_t n, std::initializer_list<std::size_t> idx) {
  return {ExplanationKind::axp, FeatureSet(n, idx)};
}

Explanation cxp(std::size_t n, std::initializer_list<std::size_t> idx) {
  return {ExplanationKind::cxp, FeatureSet(n, idx)};
}

} // namespace

TEST_SUITE("enumerator") {

TEST_CASE("grade example") {
  GradeClassifier grade;
  const Point v{10, 10, 5, 0};
  std::vector<std::pair<ExplanationKind, std::vector<std::size_t>>> trace;
  EnumerationOptions options;
  options.on_explanation = [&](const Explanation &e) {
    trace.emplace_back(e.kind, e.features.one_based());
  };
  const auto report = audited_enumerate(grade, v, options);
  CHECK(report.complete);
  CHECK(one_based(report.axps) == Sets{{1, 2}});
  CHECK(one_based(report.cxps) == Sets{{1}, {2}});
  CHECK(report.sat_calls == 4);
  // The AXp comes first, then the CXp's as the solver narrows the free set.
  using K = ExplanationKind;
  CHECK(trace == decltype(trace){{K::axp, {1, 2}}, {K::cxp, {2}}, {K::cxp, {1}}});
  CHECK(report.blocking.num_clauses() == 3);
  CHECK(sat::to_dimacs(report.blocking) == "p cnf 4 3\n1 2 0\n-2 0\n-1 0\n");
  CHECK(check_duality(report.axps, report.cxps));
}

TEST_CASE("constant classifier") {
  auto flat = constant(booleans(3));
  const auto report = audited_enumerate(*flat, {1, 0, 1});
  CHECK(report.complete);
  REQUIRE(report.axps.size() == 1);
  CHECK(report.axps[0].features.empty());
  CHECK(report.cxps.empty());
  CHECK(report.sat_calls == 2);
}

TEST_CASE("majority vote") {
  auto maj = majority3();
  const auto report = audited_enumerate(*maj, {1, 1, 1});
  const Sets pairs{{1, 2}, {1, 3}, {2, 3}};
  CHECK(one_based(report.axps) == pairs);
  CHECK(one_based(report.cxps) == pairs);
  CHECK(report.sat_calls == 7);
  CHECK(check_duality(report.axps, report.cxps));
}

TEST_CASE("either polarity gives the same families") {
  GradeClassifier grade;
  EnumerationOptions options;
  options.solver.default_value = true;
  for (const Point &v : {Point{10, 10, 5, 0}, Point{0, 0, 0, 8}, Point{5, 5, 5, 5}}) {
    const auto zero = audited_enumerate(grade, v);
    const auto one = audited_enumerate(grade, v, options);
    CHECK(sorted_sets(zero.axps) == sorted_sets(one.axps));
    CHECK(sorted_sets(zero.cxps) == sorted_sets(one.cxps));
  }
}

TEST_CASE("enumeration equals brute force and the grid") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 80; ++t) {
    const std::size_t n = 1 + t % 7;
    auto dnf = random_monotone_dnf(n, 1 + t % 4, rng);
    const auto v = point_of_mask(rng() & ((std::uint64_t{1} << n) - 1), n);
    const auto report = audited_enumerate(dnf, v);
    const auto brute = brute_force_explanations(dnf, v);
    const auto grid = grid_explanations(dnf, v);
    REQUIRE(report.complete);
    REQUIRE(sorted_sets(report.axps) == sorted_sets(brute.axps));
    REQUIRE(sorted_sets(report.cxps) == sorted_sets(brute.cxps));
    REQUIRE(index_sets(report.axps) == grid.axps);
    REQUIRE(index_sets(report.cxps) == grid.cxps);
  }
}

TEST_CASE("enumeration on multi-class integer classifiers matches brute force") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 5;
    std::vector<double> w(n);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = double(rng() % 4);
      x[i] = double(rng() % 4);
    }
    LinearThresholdClassifier lin(
        FeatureSpace(std::vector<FeatureDomain>(n, FeatureDomain::integer(0, 3))),
        ClassOrder({"lo", "mid", "hi"}), w, {3, 7});
    const Point v(std::move(x));
    const auto report = audited_enumerate(lin, v);
    const auto brute = brute_force_explanations(lin, v);
    REQUIRE(sorted_sets(report.axps) == sorted_sets(brute.axps));
    REQUIRE(sorted_sets(report.cxps) == sorted_sets(brute.cxps));
  }
}

TEST_CASE("limit yields a prefix of the complete run") {
  auto maj = majority3();
  const Point v{1, 1, 1};
  const auto full = audited_enumerate(*maj, v);
  for (std::size_t limit = 1; limit <= 6; ++limit) {
    EnumerationOptions options;
    options.limit = limit;
    const auto part = audited_enumerate(*maj, v, options);
    CHECK(part.axps.size() + part.cxps.size() == limit);
    CHECK(part.complete == (limit == 6));
    for (const auto &e : part.axps) CHECK(one_based(full.axps).count(e.features.one_based()));
    for (const auto &e : part.cxps) CHECK(one_based(full.cxps).count(e.features.one_based()));
  }
}

TEST_CASE("budget stops the run after at least one explanation") {
  auto maj = majority3();
  EnumerationOptions options;
  options.budget = std::chrono::nanoseconds(0);
  const auto report = audited_enumerate(*maj, {1, 1, 1}, options);
  CHECK(report.axps.size() + report.cxps.size() >= 1);
  CHECK_FALSE(report.complete);
}

TEST_CASE("an oracle that contradicts itself is reported") {
  // Agrees on the first corner check, then flips while the seed is tested.
  std::size_t calls = 0;
  CallableOracle flaky(booleans(2), ClassOrder({"0", "1"}),
                       [&](const Point &) { return static_cast<ClassRank>(++calls == 4); });
  CHECK_THROWS_AS(enumerate(flaky, {1, 0}), InconsistentOracle);
}

TEST_CASE("dichotomy: a set is sufficient or its complement can change the prediction") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 5;
    auto dnf = random_monotone_dnf(n, 2, rng);
    const auto v = point_of_mask(rng() & ((std::uint64_t{1} << n) - 1), n);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      const auto fixed = set_of_mask(m, n);
      REQUIRE(verify_axp(dnf, v, fixed) == !verify_cxp(dnf, v, fixed.complement()));
    }
  }
}

TEST_CASE("check_duality") {
  CHECK(check_duality({axp(4, {0, 1})}, {cxp(4, {0}), cxp(4, {1})}));

  auto r = check_duality({axp(2, {0})}, {cxp(2, {1})});
  CHECK_FALSE(r);
  REQUIRE(r.offender);
  CHECK(r.offender->features.one_based() == std::vector<std::size_t>{1});
  CHECK(r.violation == DualityViolation::misses_set);
  CHECK(r.witness->one_based() == std::vector<std::size_t>{2});

  r = check_duality({axp(3, {0, 1})}, {cxp(3, {0})});
  CHECK_FALSE(r);
  CHECK(r.violation == DualityViolation::not_minimal);

  const std::vector<Explanation> axps{axp(3, {0, 1}), axp(3, {0, 2}), axp(3, {1, 2})};
  const std::vector<Explanation> cxps{cxp(3, {0, 1}), cxp(3, {0, 2}), cxp(3, {1, 2})};
  CHECK(check_duality(axps, cxps));
}

TEST_CASE("brute force") {
  GradeClassifier grade;
  const auto fam = brute_force_explanations(grade, {10, 10, 5, 0});
  CHECK(one_based(fam.axps) == Sets{{1, 2}});
  CHECK(one_based(fam.cxps) == Sets{{1}, {2}});

  auto flat = constant(booleans(2));
  const auto none = brute_force_explanations(*flat, {0, 1});
  REQUIRE(none.axps.size() == 1);
  CHECK(none.axps[0].features.empty());
  CHECK(none.cxps.empty());

  AppendixCnfClassifier kappa(2, {{1, 2}, {-1, -2}});
  const auto app = brute_force_explanations(kappa, {1, 1, 1, 1});
  CHECK(one_based(app.axps) == Sets{{1, 3}, {2, 4}, {1, 4}, {2, 3}});

  CHECK_THROWS_AS(brute_force_explanations(*constant(booleans(5)), Point(std::vector<double>(5)), 4),
                  InputError);
}

TEST_CASE("appendix counting equivalence") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    const std::size_t k = 1 + t % 4;
    const auto phi = random_nontrivial_cnf(k, rng);
    AppendixCnfClassifier kappa(k, phi);
    const std::size_t n = 2 * k;
    const bool satisfiable = truth_table_sat(phi, k);
    const auto ones = audited_enumerate(kappa, point_of_mask((std::uint64_t{1} << n) - 1, n));
    const auto zeros = audited_enumerate(kappa, point_of_mask(0, n));
    REQUIRE((ones.axps.size() > k) == satisfiable);
    REQUIRE((zeros.cxps.size() > k) == satisfiable);
  }
}

} // TEST_SUITE
