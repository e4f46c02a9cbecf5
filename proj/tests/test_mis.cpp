#include "reliamis/mis.hpp"

#include "reliamis/galois.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace reliamis;
using namespace reliamis::testing;

namespace {

// Hand-built two-component series chain: states 11 and the failed sink,
// T1 = T2 = ((p q) (0 1)).
MisModel series_model(Rat p) {
  MisModel m;
  Rat q = Rat(1) - p;
  m.components = {{"c1", p}, {"c2", p}};
  m.states = {{0, false}, {0, true}};
  m.sink_members = {1, 2};
  m.tpms = {{{{0, p}, {1, q}}, {{1, Rat(1)}}},
            {{{0, p}, {1, q}}, {{1, Rat(1)}}}};
  m.pi0 = {Rat(1), Rat(0)};
  m.u = {1, 0};
  return m;
}

Rat eval_in_order(const MisModel& m, const std::vector<std::size_t>& order) {
  std::vector<Rat> dist = m.pi0;
  for (std::size_t ci : order) {
    std::vector<Rat> next(dist.size(), Rat(0));
    for (std::size_t si = 0; si < dist.size(); ++si) {
      if (dist[si] == 0) continue;
      for (const auto& e : m.tpms[ci][si])
        next[static_cast<std::size_t>(e.to)] += dist[si] * e.p;
    }
    dist = std::move(next);
  }
  Rat r = 0;
  for (std::size_t si = 0; si < dist.size(); ++si)
    if (m.u[si]) r += dist[si];
  return r;
}

}  // namespace

TEST_CASE("the series chain validates and evaluates to p squared") {
  MisModel m = series_model(frac(9, 10));
  CHECK(model_valid(m));
  CHECK(evaluate_reliability(m).value == frac(81, 100));
  CHECK(evaluate_reliability(m).method == EvalMethod::kAnalytic);
}

TEST_CASE("a repair transition is flagged as a no-repair violation") {
  MisModel m = series_model(frac(9, 10));
  // Send c1's failure from the initial state to ... and a bogus row that
  // walks from the sink back to the initial state.
  m.tpms[0][1] = {{0, Rat(1)}};
  auto vs = validate_model(m);
  bool no_repair = std::any_of(vs.begin(), vs.end(), [](const ModelViolation& v) {
    return v.rule == "absorbing" || v.rule == "no-repair";
  });
  CHECK(no_repair);
  CHECK(!model_valid(m));
}

TEST_CASE("a row that does not sum to one is rejected") {
  MisModel m = series_model(frac(9, 10));
  m.tpms[0][0] = {{0, frac(9, 10)}, {1, frac(9, 100)}};
  auto vs = validate_model(m);
  CHECK(std::any_of(vs.begin(), vs.end(), [](const ModelViolation& v) {
    return v.rule == "row-stochastic";
  }));
}

TEST_CASE("per-component consistency ties rows to the stated reliability") {
  MisModel m = series_model(frac(9, 10));
  m.components[0].second = frac(8, 10);  // row mass still says 0.9
  auto vs = validate_model(m);
  CHECK(std::any_of(vs.begin(), vs.end(), [](const ModelViolation& v) {
    return v.rule == "consistency";
  }));
}

TEST_CASE("pi0 and u shapes are enforced") {
  MisModel m = series_model(frac(9, 10));
  m.pi0 = {frac(1, 2), frac(1, 2)};
  CHECK(!model_valid(m));
  m = series_model(frac(9, 10));
  m.u = {1, 1};
  CHECK(!model_valid(m));
}

TEST_CASE("unreachable functional states warn but stay legal") {
  MisModel m = series_model(frac(9, 10));
  // Insert a functional state nothing reaches: failed {c1}, canonical slot 1.
  Rat p = frac(9, 10), q = Rat(1) - p;
  m.states = {{0, false}, {1, false}, {0, true}};
  m.sink_members = {1, 2, 3};
  m.tpms = {{{{0, p}, {2, q}}, {{1, Rat(1)}}, {{2, Rat(1)}}},
            {{{0, p}, {2, q}}, {{1, p}, {2, q}}, {{2, Rat(1)}}}};
  m.pi0 = {Rat(1), Rat(0), Rat(0)};
  m.u = {1, 1, 0};
  auto vs = validate_model(m);
  CHECK(model_valid(m));
  CHECK(std::any_of(vs.begin(), vs.end(), [](const ModelViolation& v) {
    return v.severity == Severity::kWarning && v.rule == "reachability";
  }));
}

TEST_CASE("walkthrough models evaluate to the published values") {
  auto states = walkthrough_states(frac(9, 10));
  CHECK(evaluate_reliability(abstract_model(states[0])).value == frac(9, 10));
  CHECK(evaluate_reliability(abstract_model(states[1])).value == frac(81, 100));
  CHECK(evaluate_reliability(abstract_model(states[2])).value == frac(9, 10));
  CHECK(evaluate_reliability(abstract_model(states[3])).value == frac(81, 100));
  CHECK(evaluate_reliability(abstract_model(states[5])).value == frac(972, 1000));
}

TEST_CASE("evaluate_at rebuilds the entries for new reliabilities") {
  MisModel m = series_model(frac(9, 10));
  CHECK(evaluate_at(m, {{"c1", Rat(1)}, {"c2", Rat(1)}}).value == 1);
  CHECK(evaluate_at(m, {{"c1", Rat(0)}, {"c2", Rat(1)}}).value == 0);
  MisModel s6 = abstract_model(s6_printed(frac(9, 10)));
  CHECK(evaluate_at(s6, {{"c1", frac(1, 2)}, {"c2", frac(1, 2)}, {"c3", frac(1, 2)}})
            .value == frac(1, 2));
  CHECK_THROWS_AS(evaluate_at(m, {{"c1", Rat(1)}}), Error);
}

TEST_CASE("the 2-of-3 chain matches its cubic closed form at six points") {
  MisModel s6 = abstract_model(s6_printed(frac(9, 10)));
  for (const Rat& p : {Rat(0), frac(1, 10), frac(1, 4), frac(1, 2), frac(9, 10), Rat(1)}) {
    Rat q = Rat(1) - p;
    Rat expected = p * p * p + 3 * p * p * q;
    CHECK(evaluate_at(s6, {{"c1", p}, {"c2", p}, {"c3", p}}).value == expected);
  }
}

TEST_CASE("raising one component reliability never hurts the corpus systems") {
  const std::vector<Rat> grid = {Rat(0), frac(1, 4), frac(1, 2), frac(3, 4), Rat(1)};
  std::vector<MisModel> corpus = {
      abstract_model(series()), abstract_model(coupled_parallel()),
      abstract_model(independent_parallel()), abstract_model(three_independent()),
      abstract_model(s3_printed(frac(9, 10))),
      abstract_model(s6_printed(frac(9, 10)))};
  for (const auto& m : corpus) {
    std::vector<std::map<ComponentName, Rat>> assignments = {{}};
    for (const auto& [name, _] : m.components) {
      std::vector<std::map<ComponentName, Rat>> grown;
      for (const auto& partial : assignments) {
        for (const Rat& v : grid) {
          auto a = partial;
          a[name] = v;
          grown.push_back(std::move(a));
        }
      }
      assignments = std::move(grown);
    }
    for (const auto& at : assignments) {
      Rat base = evaluate_at(m, at).value;
      for (const auto& [name, v] : at) {
        for (const Rat& higher : grid) {
          if (higher <= v) continue;
          auto bumped = at;
          bumped[name] = higher;
          CHECK(evaluate_at(m, bumped).value >= base);
        }
      }
    }
  }
}

TEST_CASE("a shielding cascade can make higher component reliability hurt") {
  // c1's failure silently disables c2, whose own failure would have taken
  // the system down; making c1 more reliable exposes the system to c2. The
  // reliability-monotonicity law is therefore a corpus property, not a
  // theorem for every well-formed system.
  PropertySet p = make_props({{"c1", frac(1, 2)}, {"c2", frac(1, 2)}},
                             {{{"c1"}, {"c2"}, false}, {{"c2"}, {}, true}});
  REQUIRE(check_well_formed(p).ok());
  MisModel m = abstract_model(p);
  Rat low = evaluate_at(m, {{"c1", frac(1, 2)}, {"c2", frac(1, 2)}}).value;
  Rat high = evaluate_at(m, {{"c1", Rat(1)}, {"c2", frac(1, 2)}}).value;
  CHECK(high < low);
}

TEST_CASE("component evaluation order does not change the result") {
  std::vector<MisModel> corpus = {
      abstract_model(series()), abstract_model(coupled_parallel()),
      abstract_model(independent_parallel()),
      abstract_model(s3_printed(frac(9, 10))),
      abstract_model(s6_printed(frac(9, 10)))};
  for (const auto& m : corpus) {
    std::vector<std::size_t> order(m.component_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rat reference = eval_in_order(m, order);
    CHECK(reference == evaluate_reliability(m).value);
    while (std::next_permutation(order.begin(), order.end()))
      CHECK(eval_in_order(m, order) == reference);
  }
}

TEST_CASE("state labels follow the bitstring convention") {
  MisModel s6 = abstract_model(s6_printed(frac(9, 10)));
  REQUIRE(s6.state_count() == 5);
  CHECK(s6.state_label(0) == "111");
  CHECK(s6.state_label(1) == "011");
  CHECK(s6.state_label(2) == "101");
  CHECK(s6.state_label(3) == "110");
  CHECK(s6.state_label(4) == "000");
}

TEST_CASE("perfect components give reliability one") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 30; ++i) {
    PropertySet props = random_wf_props(rng, 4);
    MisModel m = abstract_model(props);
    std::map<ComponentName, Rat> ones;
    for (const auto& [name, _] : m.components) ones[name] = 1;
    CHECK(evaluate_at(m, ones).value == 1);
  }
}
