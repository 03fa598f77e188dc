#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "clearq/simulator.hpp"
#include "clearq/solver.hpp"
#include "test_util.hpp"

using namespace clearq;

TEST_CASE("degenerate runs") {
  ModelParams p{2, 1, 2, 4, 3, 0.5, 1, 0.7};
  SUBCASE("empty system costs nothing") {
    long events = -1;
    CHECK(simulate_once(p, PolicySpec::pi1(), {0, 0, 0, 0}, 1, 0, &events) == 0.0);
    CHECK(events == 0);
  }
  SUBCASE("zero holding costs cost nothing") {
    ModelParams z = p;
    z.h0 = z.h1 = z.h2 = 0;
    CHECK(simulate_once(z, PolicySpec::pi3(), {4, 1, 1, 0}, 9, 3) == 0.0);
  }
  SUBCASE("replication count must be positive") {
    CHECK_THROWS_AS(simulate_many(p, PolicySpec::pi1(), {0, 1, 0, 0}, 0, 1),
                    std::invalid_argument);
  }
  SUBCASE("single replication flags its standard error") {
    const auto r = simulate_many(p, PolicySpec::pi1(), {0, 1, 0, 0}, 1, 1);
    CHECK_FALSE(r.se_valid);
    CHECK(r.std_error == 0.0);
  }
}

TEST_CASE("identical seeds reproduce bit-identical results") {
  ModelParams p{3, 1, 1.5, 3, 2, 0.4, 1, 0.8};
  const State initial{5, 1, 1, 1};
  const auto a = simulate_many(p, PolicySpec::pi4(), initial, 4000, 123);
  const auto b = simulate_many(p, PolicySpec::pi4(), initial, 4000, 123);
  CHECK(a.mean_cost == b.mean_cost);
  CHECK(a.std_error == b.std_error);
  const auto c = simulate_many(p, PolicySpec::pi4(), initial, 4000, 124);
  CHECK(a.mean_cost != c.mean_cost);
}

TEST_CASE("every replication performs exactly level-many events") {
  std::mt19937_64 rng(2025);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testutil::random_params(rng);
    const State initial = testutil::random_state(p, rng, 18);
    for (int r = 0; r < 5; ++r) {
      long events = -1;
      simulate_once(p, PolicySpec::pi2(4), initial, 99, r, &events);
      CHECK(events == initial.level());
    }
  }
}

TEST_CASE("uniform draws stay inside the open-closed unit interval") {
  for (std::uint64_t e = 0; e < 3000; ++e) {
    const double u = sim_uniform(7, 3, e, 0);
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("mean matches the analytic two-stage value") {
  ModelParams p{1, 1, 2, 4, 1, 0.5, 1, 0};
  const auto r = simulate_many(p, PolicySpec::pi1(), {0, 1, 0, 0}, 100000, 42);
  CHECK(r.se_valid);
  CHECK(std::abs(r.mean_cost - 0.5) <= 4 * r.std_error);
}

TEST_CASE("50-seed battery agrees with the exact policy value") {
  ModelParams p{2, 1, 2.5, 3, 2, 0.3, 1, 0.6};
  const State initial{4, 1, 1, 0};
  const PolicySpec policy = PolicySpec::pi2(6);
  const double exact =
      evaluate_policy(p, policy, initial.level()).value(initial);
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto r = simulate_many(p, policy, initial, 20000, seed);
    if (std::abs(r.mean_cost - exact) <= 4 * r.std_error) ++hits;
  }
  CHECK(hits >= 50);  // >= 99% of the battery
}
