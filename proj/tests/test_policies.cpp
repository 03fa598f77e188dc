#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "clearq/heuristics.hpp"
#include "clearq/policies.hpp"
#include "clearq/solver.hpp"
#include "test_util.hpp"

using namespace clearq;

namespace {
const ModelParams kParams{3, 1, 2, 4, 5, 0.3, 1, 0.4};
}

TEST_CASE("benchmark policy actions") {
  CHECK(policy_action(PolicySpec::pi1(), kParams, {7, 1, 1, 1}) == 0);
  CHECK(policy_action(PolicySpec::pi3(), kParams, {7, 1, 1, 1}) == 1);

  // pi2 compares the waiting count against its cutoff
  CHECK(policy_action(PolicySpec::pi2(10), kParams, {9, 1, 1, 1}) == 1);
  CHECK(policy_action(PolicySpec::pi2(10), kParams, {10, 1, 1, 1}) == 0);
  CHECK(policy_action(PolicySpec::pi2(3), kParams, {2, 1, 1, 1}) == 1);

  // pi4 collaborates only while a GP is free
  CHECK(policy_action(PolicySpec::pi4(), kParams, {5, 1, 2, 0}) == 1);
  CHECK(policy_action(PolicySpec::pi4(), kParams, {5, 1, 1, 1}) == 0);

  CHECK_THROWS_AS(policy_action(PolicySpec::pi1(), kParams, {5, 0, 2, 1}),
                  std::invalid_argument);
}

TEST_CASE("policy structure") {
  for (int i = 0; i <= 30; ++i) {
    const State s{i, 1, 1, 1};
    CHECK(policy_action(PolicySpec::pi1(), kParams, s) == 0);
    CHECK(policy_action(PolicySpec::pi3(), kParams, s) == 1);
    if (i >= 1)  // monotone non-increasing in i
      CHECK(policy_action(PolicySpec::pi2(10), kParams, s) <=
            policy_action(PolicySpec::pi2(10), kParams, {i - 1, 1, 1, 1}));
  }
}

TEST_CASE("heuristic policies dispatch to the closed forms") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = testutil::random_params(rng);
    const State s = [&] {
      for (;;) {
        const auto cand = testutil::random_state(p, rng, 20);
        if (is_decision_state(p, cand)) return cand;
      }
    }();
    CHECK(policy_action(PolicySpec::heur_piecewise(), p, s) == action_h(p, s));
    CHECK(policy_action(PolicySpec::heur_linear(), p, s) == action_h_lin(p, s));
  }
}

TEST_CASE("custom tables") {
  std::map<State, int> actions{{{0, 1, 0, 0}, 1}, {{1, 1, 1, 1}, 0}};
  const auto spec = PolicySpec::custom(actions, "inline");
  CHECK(policy_action(spec, kParams, {0, 1, 0, 0}) == 1);
  CHECK(policy_action(spec, kParams, {1, 1, 1, 1}) == 0);
  CHECK_THROWS_AS(policy_action(spec, kParams, {2, 1, 1, 1}), std::out_of_range);
}

TEST_CASE("policy spec parsing") {
  CHECK(parse_policy_spec("pi1").kind == PolicyKind::Pi1AlwaysNonCollab);
  CHECK(parse_policy_spec("pi2").threshold == 10);
  CHECK(parse_policy_spec("pi2:7").threshold == 7);
  CHECK(parse_policy_spec("pi3").kind == PolicyKind::Pi3AlwaysCollab);
  CHECK(parse_policy_spec("pi4").kind == PolicyKind::Pi4CollabIfGpFree);
  CHECK(parse_policy_spec("heur").kind == PolicyKind::HeurPiecewise);
  CHECK(parse_policy_spec("heur-lin").kind == PolicyKind::HeurLinear);
  CHECK(parse_policy_spec("optimal").kind == PolicyKind::OptimalOracle);
  CHECK_THROWS_AS(parse_policy_spec("pi9"), std::invalid_argument);

  for (const char* name : {"pi1", "pi2:7", "pi3", "pi4", "heur", "heur-lin"})
    CHECK(parse_policy_spec(name).name() == name);
}

TEST_CASE("custom table file round trip") {
  const char* path = "custom_policy_test.json";
  {
    std::ofstream out(path);
    out << R"({"actions":[{"state":[0,1,0,0],"action":1},
                          {"state":[2,1,1,1],"action":0}]})";
  }
  const auto spec = parse_policy_spec(std::string("custom:") + path);
  CHECK(policy_action(spec, kParams, {0, 1, 0, 0}) == 1);
  CHECK(policy_action(spec, kParams, {2, 1, 1, 1}) == 0);
  CHECK(spec.name() == std::string("custom:") + path);
  std::remove(path);
  CHECK_THROWS_AS(parse_policy_spec("custom:no_such_file.json"),
                  std::invalid_argument);
}

TEST_CASE("the optimal oracle reproduces the optimal table") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = testutil::random_params(rng);
    const int m_max = 16;
    auto opt = std::make_shared<const ValueTable>(solve_optimal(p, m_max));
    const auto echo = evaluate_policy(p, PolicySpec::optimal(opt), m_max);
    for (const auto& layer : echo.layers())
      for (const State& s : layer)
        CHECK(echo.value(s) ==
              doctest::Approx(opt->value(s)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(policy_action(PolicySpec::optimal(), kParams, {0, 1, 0, 0}),
                  std::invalid_argument);
}
