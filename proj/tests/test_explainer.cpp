#include "audit.hpp"
#include "monoxp/classifiers.hpp"
#include "monoxp/errors.hpp"
#include "monoxp/explainer.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace monoxp;
using namespace monoxp::testing;

TEST_SUITE("explainer") {

TEST_CASE("free_attr and fix_attr move features and coordinates") {
  const auto space = GradeClassifier::default_space();
  const Point v{10, 10, 5, 0};
  auto state = ExplainerState::pinned(v);
  CHECK(state.is_partition());
  CHECK(state.candidates.size() == 4);

  free_attr(0, space, state, Bucket::candidates, Bucket::dropped);
  CHECK(state.lower == Point{0, 10, 5, 0});
  CHECK(state.upper == Point{10, 10, 5, 0});
  CHECK(state.dropped.indices() == std::vector<std::size_t>{0});
  CHECK(state.is_partition());
  CHECK(state.brackets(v));

  fix_attr(0, v, state, Bucket::dropped, Bucket::picked);
  CHECK(state.lower == v);
  CHECK(state.upper == v);
  CHECK(state.picked.indices() == std::vector<std::size_t>{0});
  CHECK(state.dropped.empty());

  CHECK_THROWS_AS(free_attr(0, space, state, Bucket::candidates, Bucket::dropped), std::logic_error);
  CHECK_THROWS_AS(fix_attr(3, v, state, Bucket::picked, Bucket::dropped), std::logic_error);

  auto open = ExplainerState::unpinned(space);
  CHECK(open.lower == space.lower_corner());
  CHECK(open.upper == space.upper_corner());
  CHECK(open.brackets(v));
}

TEST_CASE("grade example: AXp trace") {
  GradeClassifier grade;
  const Point v{10, 10, 5, 0};
  std::vector<std::pair<std::size_t, bool>> decisions;
  SearchOptions options;
  options.order = {0, 1, 2, 3};
  options.on_step = [&](const ScanStep &s) {
    decisions.emplace_back(s.feature, s.kept);
    CHECK(s.state.is_partition());
    CHECK(s.state.brackets(v));
    CHECK(grade.classify(s.state.lower) == grade.classify(s.state.upper));
  };
  const auto [e, calls] = audited_find(grade, v, ExplanationKind::axp, options);
  CHECK(e.kind == ExplanationKind::axp);
  CHECK(e.features.one_based() == std::vector<std::size_t>{1, 2});
  CHECK(decisions == std::vector<std::pair<std::size_t, bool>>{
                         {0, true}, {1, true}, {2, false}, {3, false}});
  CHECK(calls <= 10);
}

TEST_CASE("grade example: CXp trace") {
  GradeClassifier grade;
  const Point v{10, 10, 5, 0};
  std::vector<std::pair<std::size_t, bool>> decisions;
  SearchOptions options;
  options.on_step = [&](const ScanStep &s) {
    decisions.emplace_back(s.feature, s.kept);
    CHECK(grade.classify(s.state.lower) != grade.classify(s.state.upper));
  };
  const auto e = audited_cxp(grade, v, options);
  CHECK(e.kind == ExplanationKind::cxp);
  CHECK(e.features.one_based() == std::vector<std::size_t>{2});
  CHECK(decisions == std::vector<std::pair<std::size_t, bool>>{
                         {0, false}, {1, true}, {2, false}, {3, false}});
}

TEST_CASE("majority vote") {
  auto maj = majority3();
  const Point v{1, 1, 1};
  CHECK(audited_axp(*maj, v).features.one_based() == std::vector<std::size_t>{2, 3});
  CHECK(audited_cxp(*maj, v).features.one_based() == std::vector<std::size_t>{2, 3});

  // A reversed scan finds a different member of the same family.
  SearchOptions reversed;
  reversed.order = {2, 1, 0};
  CHECK(audited_axp(*maj, v, reversed).features.one_based() == std::vector<std::size_t>{1, 2});
  CHECK(audited_cxp(*maj, v, reversed).features.one_based() == std::vector<std::size_t>{1, 2});
}

TEST_CASE("constant classifier") {
  auto flat = constant(booleans(3));
  const Point v{1, 0, 1};
  CHECK(audited_axp(*flat, v).features.empty());
  CHECK_THROWS_AS(find_cxp(*flat, v), NoCxpExists);
}

TEST_CASE("seeds") {
  GradeClassifier grade;
  const Point v{10, 10, 5, 0};

  SearchOptions options;
  options.seed = FeatureSet(4, {2, 3});
  CHECK(audited_axp(grade, v, options).features.one_based() == std::vector<std::size_t>{1, 2});

  // Freeing X alone already lets the grade drop.
  options.seed = FeatureSet(4, {1});
  CHECK_THROWS_AS(find_axp(grade, v, options), SeedBreaksInvariant);

  // Fixing Q, H, R keeps a change possible through X.
  options.seed = FeatureSet(4, {0, 2, 3});
  CHECK(audited_cxp(grade, v, options).features.one_based() == std::vector<std::size_t>{2});

  // Fixing Q and X pins the grade at A.
  options.seed = FeatureSet(4, {0, 1});
  CHECK_THROWS_AS(find_cxp(grade, v, options), SeedBreaksInvariant);

  options.seed = FeatureSet(3, {0});
  CHECK_THROWS_AS(find_axp(grade, v, options), InputError);
}

TEST_CASE("bad orders and points are rejected") {
  GradeClassifier grade;
  SearchOptions options;
  options.order = {0, 1, 1, 3};
  CHECK_THROWS_AS(find_axp(grade, {10, 10, 5, 0}, options), InputError);
  options.order = {0, 1, 2};
  CHECK_THROWS_AS(find_cxp(grade, {10, 10, 5, 0}, options), InputError);
  CHECK_THROWS_AS(find_axp(grade, {10, 10, 5}), InputError);
  CHECK_THROWS_AS(find_axp(grade, {10, 10, 5, 11}), InputError);
}

TEST_CASE("every scan order yields a member of the grid families") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + t % 5;
    auto dnf = random_monotone_dnf(n, 1 + t % 4, rng);
    const auto v = point_of_mask(rng() & ((std::uint64_t{1} << n) - 1), n);
    const auto grid = grid_explanations(dnf, v);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    SearchOptions options;
    options.order = order;

    const auto axp = audited_axp(dnf, v, options);
    REQUIRE(grid.axps.count(axp.features.indices()) == 1);
    if (grid.cxps.empty()) {
      REQUIRE_THROWS_AS(find_cxp(dnf, v, options), NoCxpExists);
    } else {
      const auto cxp = audited_cxp(dnf, v, options);
      REQUIRE(grid.cxps.count(cxp.features.indices()) == 1);
    }
  }
}

TEST_CASE("every explanation can be reached by some scan order") {
  auto maj = majority3();
  const Point v{1, 1, 1};
  std::set<std::vector<std::size_t>> axps;
  std::set<std::vector<std::size_t>> cxps;
  std::vector<std::size_t> order{0, 1, 2};
  do {
    SearchOptions options;
    options.order = order;
    axps.insert(audited_axp(*maj, v, options).features.indices());
    cxps.insert(audited_cxp(*maj, v, options).features.indices());
  } while (std::next_permutation(order.begin(), order.end()));
  const auto grid = grid_explanations(*maj, v);
  CHECK(axps == grid.axps);
  CHECK(cxps == grid.cxps);
}

TEST_CASE("call bound holds on multi-class and real-valued classifiers") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> weight(0.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 9;
    std::vector<FeatureDomain> domains;
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      domains.push_back(i % 2 ? FeatureDomain::integer(0, 5) : FeatureDomain::real(-1, 1));
      w[i] = t % 7 == 0 ? 0.0 : weight(rng);
    }
    FeatureSpace space(std::move(domains));
    LinearThresholdClassifier lin(space, ClassOrder({"a", "b", "c", "d"}), w, {-1, 0.5, 3});
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = i % 2 ? double(rng() % 6) : std::uniform_real_distribution<double>(-1, 1)(rng);
    }
    const Point v(std::move(x));
    const auto axp = audited_find(lin, v, ExplanationKind::axp);
    REQUIRE(axp.calls <= 2 * n + 2);
    try {
      const auto cxp = audited_find(lin, v, ExplanationKind::cxp);
      REQUIRE(cxp.calls <= 2 * n + 2);
      REQUIRE_FALSE(cxp.explanation.features.empty());
    } catch (const NoCxpExists &) {
      REQUIRE(lin.classify(space.lower_corner()) == lin.classify(space.upper_corner()));
    }
  }
}

} // TEST_SUITE
