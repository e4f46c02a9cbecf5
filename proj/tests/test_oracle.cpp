#include "reliamis/oracle.hpp"

#include "reliamis/galois.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace reliamis;
using namespace reliamis::testing;

TEST_CASE("path enumeration rebuilds the closed forms") {
  MisModel series_m = abstract_model(series(frac(9, 10)));
  ReliabilityResult r = path_enum_reliability(series_m);
  CHECK(r.value == frac(81, 100));
  CHECK(r.method == EvalMethod::kPathEnum);

  MisModel s6 = abstract_model(s6_printed(frac(9, 10)));
  CHECK(path_enum_reliability(s6).value == frac(972, 1000));

  MisModel single = abstract_model(tighten_rel(top(), "c", frac(7, 16)));
  CHECK(path_enum_reliability(single).value == frac(7, 16));
}

TEST_CASE("path enumeration agrees exactly with the matrix product") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 300; ++i) {
    MisModel m = abstract_model(random_wf_props(rng, 5));
    CHECK(path_enum_reliability(m).value == evaluate_reliability(m).value);
  }
}

TEST_CASE("path enumeration refuses oversized systems") {
  // A wide series system keeps the state space at two but the path tree at
  // 2^n; the component guard trips first.
  std::vector<std::pair<ComponentName, Rat>> comps;
  std::vector<Dependency> deps;
  for (int i = 1; i <= 21; ++i) {
    ComponentName c = "c" + std::to_string(i);
    comps.push_back({c, frac(1, 2)});
    deps.push_back({{c}, {}, true});
  }
  MisModel m = abstract_model(make_props(comps, deps));
  CHECK_THROWS_AS(path_enum_reliability(m), Error);
}

TEST_CASE("the Monte Carlo estimate brackets the analytic value") {
  TrialConfig cfg;
  cfg.trials = 1000000;
  cfg.seed = 42;

  MisModel series_m = abstract_model(series(frac(9, 10)));
  ReliabilityResult mc = monte_carlo_reliability(series_m, cfg);
  REQUIRE(mc.ci_halfwidth.has_value());
  REQUIRE(mc.trials == cfg.trials);
  CHECK(std::abs(to_double(mc.value) - 0.81) <= *mc.ci_halfwidth);
  CHECK(*mc.ci_halfwidth == doctest::Approx(0.00117).epsilon(0.1));

  MisModel s6 = abstract_model(s6_printed(frac(9, 10)));
  ReliabilityResult mc6 = monte_carlo_reliability(s6, cfg);
  CHECK(std::abs(to_double(mc6.value) - 0.972) <= *mc6.ci_halfwidth);
  CHECK(*mc6.ci_halfwidth == doctest::Approx(0.000496).epsilon(0.1));
}

TEST_CASE("perfect components simulate to exactly one") {
  MisModel m = abstract_model(series(Rat(1)));
  TrialConfig cfg;
  cfg.trials = 10000;
  cfg.seed = 7;
  ReliabilityResult r = monte_carlo_reliability(m, cfg);
  CHECK(r.value == 1);
  CHECK(*r.ci_halfwidth == 0.0);
}

TEST_CASE("a fixed seed reproduces the estimate bit for bit") {
  MisModel m = abstract_model(s6_printed(frac(9, 10)));
  TrialConfig cfg;
  cfg.trials = 50000;
  cfg.seed = 99;
  ReliabilityResult a = monte_carlo_reliability(m, cfg);
  ReliabilityResult b = monte_carlo_reliability(m, cfg);
  CHECK(a.value == b.value);
  cfg.seed = 100;
  CHECK(monte_carlo_reliability(m, cfg).value != a.value);
}

TEST_CASE("trial draws are pure functions of seed, trial and step") {
  CHECK(counter_uniform(1, 0, 0) == counter_uniform(1, 0, 0));
  CHECK(counter_uniform(1, 0, 0) != counter_uniform(2, 0, 0));
  CHECK(counter_uniform(1, 0, 0) != counter_uniform(1, 1, 0));
  CHECK(counter_uniform(1, 0, 0) != counter_uniform(1, 0, 1));
  // Values live in [0, 1).
  for (std::uint64_t t = 0; t < 1000; ++t) {
    double u = counter_uniform(3, t, t % 7);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("the estimate stays inside three sigma across seeds") {
  MisModel m = abstract_model(series(frac(9, 10)));
  TrialConfig cfg;
  cfg.trials = 20000;
  int inside = 0;
  const int runs = 100;
  for (int s = 0; s < runs; ++s) {
    cfg.seed = static_cast<std::uint64_t>(s);
    ReliabilityResult r = monte_carlo_reliability(m, cfg);
    if (std::abs(to_double(r.value) - 0.81) <= *r.ci_halfwidth) ++inside;
  }
  CHECK(inside >= 99);
}

TEST_CASE("simulation honors a reliability assignment") {
  MisModel m = abstract_model(series(frac(9, 10)));
  TrialConfig cfg;
  cfg.trials = 200000;
  cfg.seed = 5;
  cfg.assignment = {{{"c1", frac(1, 2)}, {"c2", frac(1, 2)}}};
  ReliabilityResult r = monte_carlo_reliability(m, cfg);
  CHECK(std::abs(to_double(r.value) - 0.25) <= *r.ci_halfwidth);
}
