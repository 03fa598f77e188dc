#include "clearq/json_io.hpp"

#include <cmath>

namespace clearq {

using nlohmann::json;

json params_to_json(const ModelParams& p) {
  return json{{"cp", p.cp},   {"cg", p.cg},   {"mu0", p.mu0}, {"mu1", p.mu1},
              {"mu2", p.mu2}, {"h0", p.h0},   {"h1", p.h1},   {"h2", p.h2}};
}

ModelParams params_from_json(const json& j) {
  ModelParams p;
  p.cp = j.at("cp").get<int>();
  p.cg = j.at("cg").get<int>();
  p.mu0 = j.at("mu0").get<double>();
  p.mu1 = j.at("mu1").get<double>();
  p.mu2 = j.at("mu2").get<double>();
  p.h0 = j.at("h0").get<double>();
  p.h1 = j.at("h1").get<double>();
  p.h2 = j.at("h2").get<double>();
  p.validate();
  return p;
}

json state_to_json(const State& s) { return json::array({s.i, s.j, s.k, s.l}); }

State state_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4)
    throw std::invalid_argument("state must be a 4-element array [i,j,k,l]");
  return State{j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>(),
               j.at(3).get<int>()};
}

json value_table_to_json(const ValueTable& table) {
  json entries = json::array();
  for (const auto& layer : table.layers())
    for (const State& s : layer) {
      json entry{{"state", state_to_json(s)}, {"value", table.value(s)}};
      if (is_decision_state(table.params(), s)) entry["action"] = table.action(s);
      entries.push_back(std::move(entry));
    }
  json out{{"params", params_to_json(table.params())},
           {"m_max", table.m_max()},
           {"mode", table.mode() == TableMode::Optimal ? "optimal" : "policy"},
           {"entries", std::move(entries)}};
  if (table.mode() == TableMode::UnderPolicy) out["policy"] = table.policy()->name();
  return out;
}

ValueTable value_table_from_json(const json& j) {
  const ModelParams params = params_from_json(j.at("params"));
  const int m_max = j.at("m_max").get<int>();
  const std::string mode = j.at("mode").get<std::string>();
  std::optional<PolicySpec> policy;
  if (mode == "policy") policy = parse_policy_spec(j.at("policy").get<std::string>());

  ValueTable table(params, m_max,
                   mode == "policy" ? TableMode::UnderPolicy : TableMode::Optimal,
                   policy);
  for (const auto& entry : j.at("entries")) {
    const State s = state_from_json(entry.at("state"));
    const int action = entry.contains("action") ? entry.at("action").get<int>() : -1;
    table.set(s, entry.at("value").get<double>(), action);
  }
  return table;
}

json sim_result_to_json(const SimResult& r) {
  return json{{"replications", r.replications},
              {"mean_cost", r.mean_cost},
              {"std_error", r.std_error},
              {"se_valid", r.se_valid},
              {"seed", r.seed},
              {"initial", state_to_json(r.initial)},
              {"policy", r.policy}};
}

namespace {

json opt_num(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json finite_or_string(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

json constants_to_json(const HeuristicConstants& hc) {
  return json{{"j_implied", hc.j_implied},
              {"b", hc.b},
              {"c", hc.c},
              {"c_prime", hc.c_prime},
              {"b_prime", hc.b_prime},
              {"w", hc.w},
              {"b_l", opt_num(hc.b_l)},
              {"c_l", opt_num(hc.c_l)},
              {"y_l", opt_num(hc.y_l)},
              {"ell_prime", hc.ell_prime ? json(*hc.ell_prime) : json(nullptr)}};
}

json threshold_rule_to_json(const ThresholdRule& rule) {
  const char* kind = nullptr;
  switch (rule.kind) {
    case RuleKind::AlwaysNonCollab: kind = "always_non_collab"; break;
    case RuleKind::AlwaysCollab: kind = "always_collab"; break;
    case RuleKind::CollabBelow: kind = "collab_below"; break;
    case RuleKind::CollabAbove: kind = "collab_above"; break;
  }
  json out{{"kind", kind},
           {"c_tilde", finite_or_string(rule.c_tilde)},
           {"b_tilde", finite_or_string(rule.b_tilde)},
           {"R1", finite_or_string(rule.r1)},
           {"R2", finite_or_string(rule.r2)},
           {"base", rule.base}};
  if (rule.kind == RuleKind::CollabBelow || rule.kind == RuleKind::CollabAbove)
    out["R"] = finite_or_string(rule.r);
  return out;
}

}  // namespace clearq
