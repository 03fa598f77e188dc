// clearq: exact solver, heuristic advisor, policy benchmark harness, and
// Monte Carlo simulator for the two-stage collaborative-care clearing queue.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "clearq/experiments.hpp"
#include "clearq/heuristics.hpp"
#include "clearq/json_io.hpp"
#include "clearq/model.hpp"
#include "clearq/policies.hpp"
#include "clearq/simulator.hpp"
#include "clearq/solver.hpp"

namespace {

using clearq::ModelParams;
using clearq::State;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Model parameters from an optional JSON config plus inline flag overrides.
struct ParamArgs {
  std::string config_path;
  std::optional<int> cp, cg;
  std::optional<double> mu0, mu1, mu2, h0, h1, h2;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON file with model parameters");
    cmd->add_option("--cp", cp, "number of NPs");
    cmd->add_option("--cg", cg, "number of GPs");
    cmd->add_option("--mu0", mu0, "triage service rate");
    cmd->add_option("--mu1", mu1, "non-collaborative service rate");
    cmd->add_option("--mu2", mu2, "collaborative service rate");
    cmd->add_option("--h0", h0, "holding cost at triage");
    cmd->add_option("--h1", h1, "holding cost at the non-collaborative station");
    cmd->add_option("--h2", h2, "holding cost at the collaborative station");
  }

  ModelParams resolve() const {
    std::optional<ModelParams> base;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot open config: " + config_path);
      nlohmann::json j;
      in >> j;
      base = clearq::params_from_json(j);
    }
    ModelParams p = base.value_or(ModelParams{});
    if (cp) p.cp = *cp;
    if (cg) p.cg = *cg;
    if (mu0) p.mu0 = *mu0;
    if (mu1) p.mu1 = *mu1;
    if (mu2) p.mu2 = *mu2;
    if (h0) p.h0 = *h0;
    if (h1) p.h1 = *h1;
    if (h2) p.h2 = *h2;
    if (!base && !(cp && cg && mu0 && mu1 && mu2 && h0 && h1 && h2))
      throw UsageError("model parameters incomplete: pass --config or all of "
                       "--cp --cg --mu0 --mu1 --mu2 --h0 --h1 --h2");
    p.validate();
    return p;
  }
};

State parse_state(const std::string& text) {
  State s;
  char c1, c2, c3;
  std::istringstream in(text);
  if (!(in >> s.i >> c1 >> s.j >> c2 >> s.k >> c3 >> s.l) || c1 != ',' ||
      c2 != ',' || c3 != ',' || !(in >> std::ws).eof())
    throw UsageError("state must be i,j,k,l");
  return s;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);  // LF line endings as-is
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << text;
}

int default_jobs() {
  const char* env = std::getenv("CLEARQ_JOBS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

int run(int argc, char** argv) {
  CLI::App app{"two-stage collaborative-care clearing queue toolkit"};
  app.require_subcommand(1);

  std::string state_text, policy_text, format = "text", out_path;
  long reps = 100000;
  std::uint64_t seed = 1;
  int jobs = default_jobs();
  int i0 = 20;
  bool no_assumption = false;
  std::string sweep_out, stats_out, policies_csv;

  ParamArgs solve_params, advise_params, eval_params, sim_params;

  auto* solve_cmd =
      app.add_subcommand("solve", "optimal values from an initial state");
  solve_params.attach(solve_cmd);
  solve_cmd->add_option("--state", state_text, "initial state i,j,k,l")->required();
  solve_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* advise_cmd = app.add_subcommand(
      "advise", "value difference, heuristics and threshold rule at a decision state");
  advise_params.attach(advise_cmd);
  advise_cmd->add_option("--state", state_text, "decision state i,j,k,l")->required();
  advise_cmd->add_option("--format", format, "text|json");

  auto* eval_cmd = app.add_subcommand("eval", "policy value and error vs optimal");
  eval_params.attach(eval_cmd);
  eval_cmd->add_option("--state", state_text, "initial state i,j,k,l")->required();
  eval_cmd
      ->add_option("--policy", policy_text,
                   "pi1|pi2:<T>|pi3|pi4|heur|heur-lin|optimal|custom:<path>")
      ->required();
  eval_cmd->add_option("--format", format, "text|json");

  auto* sim_cmd =
      app.add_subcommand("simulate", "Monte Carlo estimate of a policy value");
  sim_params.attach(sim_cmd);
  sim_cmd->add_option("--state", state_text, "initial state i,j,k,l")->required();
  sim_cmd->add_option("--policy", policy_text, "policy spec")->required();
  sim_cmd->add_option("--reps", reps, "replications")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", seed, "RNG seed");
  sim_cmd->add_option("--format", format, "text|json");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "benchmark grid: records and block stats");
  sweep_cmd->add_flag("--defaults", "run the standard grid (also the default)");
  sweep_cmd->add_option("--i0", i0, "initial upstream queue length");
  sweep_cmd->add_flag("--no-assumption", no_assumption,
                      "keep combos violating the cost-efficiency assumption");
  sweep_cmd->add_option("--policies", policies_csv, "comma-separated policy specs");
  sweep_cmd->add_option("--out", sweep_out, "records CSV path (default stdout)");
  sweep_cmd->add_option("--stats-out", stats_out, "block stats CSV path");
  sweep_cmd->add_option("--jobs", jobs, "worker threads (env CLEARQ_JOBS)");

  auto* tables_cmd = app.add_subcommand(
      "tables", "benchmark error tables by staffing pair and rate regime");
  tables_cmd->add_flag("--no-assumption", no_assumption,
                       "(refused: tables compare like against like)");
  tables_cmd->add_option("--jobs", jobs, "worker threads (env CLEARQ_JOBS)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  if (solve_cmd->parsed()) {
    const ModelParams p = solve_params.resolve();
    const State initial = parse_state(state_text);
    clearq::require_feasible(p, initial);
    const auto table = clearq::solve_optimal(p, initial.level());
    write_output(out_path, clearq::value_table_to_json(table).dump(2) + "\n");
    return 0;
  }

  if (advise_cmd->parsed()) {
    const ModelParams p = advise_params.resolve();
    const State s = parse_state(state_text);
    if (!clearq::is_decision_state(p, s))
      throw std::domain_error("advise requires a decision state (j >= 1)");
    const auto table = clearq::solve_optimal(p, s.level());
    const double d = clearq::value_difference(table, s);
    const auto hc = clearq::constants(p, s.k, s.l);
    const auto rule = clearq::threshold_form(p, s.k, s.l);
    const double h = clearq::h_piecewise(p, s);
    const double h_lin = clearq::h_linear(p, s);
    if (format == "json") {
      nlohmann::json j{{"state", clearq::state_to_json(s)},
                       {"D", d},
                       {"optimal_action", table.action(s)},
                       {"H", h},
                       {"H_lin", h_lin},
                       {"action_h", clearq::action_h(p, s)},
                       {"action_h_lin", clearq::action_h_lin(p, s)},
                       {"constants", clearq::constants_to_json(hc)},
                       {"threshold_rule", clearq::threshold_rule_to_json(rule)}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::printf("state %s\n", s.str().c_str());
      std::printf("  D        = %.10g  -> optimal action %d\n", d, table.action(s));
      std::printf("  H        = %.10g  -> action %d\n", h, clearq::action_h(p, s));
      std::printf("  H_lin    = %.10g  -> action %d\n", h_lin,
                  clearq::action_h_lin(p, s));
      std::printf("  constants %s\n", clearq::constants_to_json(hc).dump().c_str());
      std::printf("  rule      %s\n",
                  clearq::threshold_rule_to_json(rule).dump().c_str());
    }
    return 0;
  }

  if (eval_cmd->parsed()) {
    const ModelParams p = eval_params.resolve();
    const State s = parse_state(state_text);
    clearq::require_feasible(p, s);
    const int m_max = s.level();
    auto optimal =
        std::make_shared<const clearq::ValueTable>(clearq::solve_optimal(p, m_max));
    clearq::PolicySpec spec = clearq::parse_policy_spec(policy_text);
    if (spec.kind == clearq::PolicyKind::OptimalOracle && !spec.oracle)
      spec.oracle = optimal;
    const auto table = clearq::evaluate_policy(p, spec, m_max);
    const double v_pi = table.value(s), v_opt = optimal->value(s);
    const double err = v_opt > 0 ? 100.0 * (v_pi - v_opt) / v_opt : 0.0;
    if (format == "json") {
      std::cout << nlohmann::json{{"state", clearq::state_to_json(s)},
                                  {"policy", spec.name()},
                                  {"v_pi", v_pi},
                                  {"v_opt", v_opt},
                                  {"err_pct", err}}
                       .dump(2)
                << "\n";
    } else {
      std::printf("v_pi  = %.10g\nv_opt = %.10g\nerr   = %.4f%%\n", v_pi, v_opt,
                  err);
    }
    return 0;
  }

  if (sim_cmd->parsed()) {
    const ModelParams p = sim_params.resolve();
    const State s = parse_state(state_text);
    clearq::require_feasible(p, s);
    clearq::PolicySpec spec = clearq::parse_policy_spec(policy_text);
    if (spec.kind == clearq::PolicyKind::OptimalOracle && !spec.oracle)
      spec.oracle = std::make_shared<const clearq::ValueTable>(
          clearq::solve_optimal(p, s.level()));
    const auto r = clearq::simulate_many(p, spec, s, reps, seed);
    if (format == "json") {
      std::cout << clearq::sim_result_to_json(r).dump(2) << "\n";
    } else {
      std::printf("mean = %.10g +/- %.10g  (n=%ld, seed=%llu)\n", r.mean_cost,
                  1.96 * r.std_error, r.replications, (unsigned long long)r.seed);
    }
    return 0;
  }

  if (sweep_cmd->parsed() || tables_cmd->parsed()) {
    auto cfg = clearq::SweepConfig::defaults();
    cfg.jobs = jobs;
    cfg.i0 = i0;
    if (tables_cmd->parsed() && no_assumption)
      throw std::domain_error("tables requires the cost-efficiency assumption filter");
    cfg.enforce_assumption = !no_assumption;
    if (!policies_csv.empty()) {
      cfg.policies.clear();
      std::istringstream in(policies_csv);
      std::string item;
      while (std::getline(in, item, ','))
        cfg.policies.push_back(clearq::parse_policy_spec(item));
    }
    const auto records = clearq::run_sweep(cfg);
    const auto blocks = clearq::aggregate(records, cfg.mu1);
    if (tables_cmd->parsed()) {
      std::cout << clearq::format_error_tables(blocks, cfg);
      return 0;
    }
    write_output(sweep_out, clearq::records_csv(records));
    if (!stats_out.empty()) write_output(stats_out, clearq::block_stats_csv(blocks));
    if (!sweep_out.empty()) std::cout << clearq::format_error_tables(blocks, cfg);
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
