#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "clearq/experiments.hpp"

using namespace clearq;

namespace {

SweepConfig tiny_config() {
  auto cfg = SweepConfig::defaults();
  cfg.staffing = {{2, 1}, {3, 2}};
  cfg.h0_list = {0.1};
  cfg.h2_list = {0.2, 1.0};
  cfg.mu0_list = {2};
  cfg.mu2_list = {2, 8};
  return cfg;
}

}  // namespace

TEST_CASE("grid construction") {
  const auto cfg = SweepConfig::defaults();
  SUBCASE("assumption filter keeps 600 combos") {
    CHECK(build_grid(cfg).size() == 600);
  }
  SUBCASE("regime split") {
    long slow = 0, fast = 0;
    for (const auto& combo : build_grid(cfg))
      (combo.mu2 <= cfg.mu1 ? slow : fast) += 1;
    CHECK(slow == 250);
    CHECK(fast == 350);
  }
  SUBCASE("unfiltered grid is the full product") {
    auto open = cfg;
    open.enforce_assumption = false;
    CHECK(build_grid(open).size() == 875);
  }
  SUBCASE("boundary ratios are excluded") {
    // h2/mu2 = 0.25 sits exactly on the assumption boundary
    for (const auto& combo : build_grid(cfg))
      CHECK(combo.h2 / combo.mu2 < 0.25);
  }
  SUBCASE("empty lists are rejected") {
    auto broken = cfg;
    broken.mu2_list.clear();
    CHECK_THROWS_AS(build_grid(broken), std::invalid_argument);
  }
}

TEST_CASE("sweep records") {
  auto cfg = tiny_config();
  const auto records = run_sweep(cfg);

  SUBCASE("record count is combos x states x policies") {
    const auto combos = build_grid(cfg);
    // 3 decision states for cp=2 plus 6 for cp=3
    CHECK(records.size() == combos.size() * (3 + 6) * cfg.policies.size());
  }
  SUBCASE("record count across all six staffing pairs") {
    auto one = tiny_config();
    one.staffing = SweepConfig::defaults().staffing;
    one.h2_list = {0.2};
    one.mu2_list = {2};
    CHECK(run_sweep(one).size() ==
          (3 + 6 + 6 + 10 + 10 + 10) * one.policies.size());
  }
  SUBCASE("initial states enumerate the full-occupancy decision set") {
    std::set<State> cp2_states;
    for (const auto& r : records)
      if (r.cp == 2) cp2_states.insert(r.initial);
    CHECK(cp2_states == std::set<State>{{20, 1, 0, 1}, {20, 1, 1, 0}, {20, 2, 0, 0}});
  }
  SUBCASE("dominance holds in every record") {
    for (const auto& r : records) {
      CHECK(r.v_pi >= r.v_opt * (1.0 - 1e-9));
      CHECK(r.err_pct >= -1e-7);
    }
  }
  SUBCASE("reruns are bit-identical") {
    const auto again = run_sweep(cfg);
    CHECK(records_csv(records) == records_csv(again));
  }
  SUBCASE("parallel execution preserves the output") {
    auto wide = cfg;
    wide.jobs = 4;
    CHECK(records_csv(run_sweep(wide)) == records_csv(records));
  }
  SUBCASE("csv header") {
    const auto csv = records_csv(records);
    CHECK(csv.rfind("config_id,cp,cg,h0,h2,mu0,mu2,i,j,k,l,policy,v_opt,v_pi,err_pct\n",
                    0) == 0);
  }
}

TEST_CASE("the optimal oracle sweeps to zero error") {
  auto cfg = tiny_config();
  cfg.staffing = {{2, 1}};
  cfg.policies = {PolicySpec::optimal()};
  for (const auto& r : run_sweep(cfg)) {
    CHECK(r.err_pct == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.v_pi == doctest::Approx(r.v_opt).epsilon(1e-12));
  }
}

TEST_CASE("aggregation") {
  auto cfg = tiny_config();
  const auto records = run_sweep(cfg);
  const auto blocks = aggregate(records, cfg.mu1);

  SUBCASE("one block per staffing x regime x policy") {
    CHECK(blocks.size() == 2 * 2 * cfg.policies.size());
    for (const auto& b : blocks) {
      CHECK(b.max_err >= b.avg_err);
      CHECK(b.avg_err >= 0.0);
    }
  }
  SUBCASE("stats recompute from the matching records") {
    const auto& b = blocks.front();
    double maxe = 0, sum = 0;
    long n = 0;
    for (const auto& r : records)
      if (r.cp == b.cp && r.cg == b.cg && (r.mu2 > cfg.mu1) == b.mu2_gt_mu1 &&
          r.policy == b.policy) {
        maxe = std::max(maxe, r.err_pct);
        sum += r.err_pct;
        ++n;
      }
    CHECK(n == b.count);
    CHECK(b.max_err == doctest::Approx(maxe));
    CHECK(b.avg_err == doctest::Approx(sum / n));
  }
  SUBCASE("all-optimal records aggregate to zero") {
    auto cfg2 = tiny_config();
    cfg2.staffing = {{2, 1}};
    cfg2.policies = {PolicySpec::optimal()};
    for (const auto& b : aggregate(run_sweep(cfg2), cfg2.mu1)) {
      CHECK(b.max_err == doctest::Approx(0.0).epsilon(1e-9));
      CHECK(b.avg_err == doctest::Approx(0.0).epsilon(1e-9));
      CHECK(b.std_err == doctest::Approx(0.0).epsilon(1e-9));
    }
  }
  SUBCASE("aggregating nothing is an error") {
    CHECK_THROWS_AS(aggregate({}, 4.0), std::invalid_argument);
  }
}

TEST_CASE("table formatting carries every block") {
  auto cfg = tiny_config();
  const auto blocks = aggregate(run_sweep(cfg), cfg.mu1);
  const auto text = format_error_tables(blocks, cfg);
  CHECK(text.find("mu1 >= mu2") != std::string::npos);
  CHECK(text.find("mu1 < mu2") != std::string::npos);
  for (const auto& spec : cfg.policies)
    CHECK(text.find(spec.name()) != std::string::npos);
}
