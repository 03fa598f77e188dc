#include "clearq/policies.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "clearq/heuristics.hpp"
#include "clearq/solver.hpp"

namespace clearq {

PolicySpec PolicySpec::pi1() { return {PolicyKind::Pi1AlwaysNonCollab}; }
PolicySpec PolicySpec::pi2(int threshold) {
  PolicySpec s{PolicyKind::Pi2CollabBelow};
  s.threshold = threshold;
  return s;
}
PolicySpec PolicySpec::pi3() { return {PolicyKind::Pi3AlwaysCollab}; }
PolicySpec PolicySpec::pi4() { return {PolicyKind::Pi4CollabIfGpFree}; }
PolicySpec PolicySpec::heur_piecewise() { return {PolicyKind::HeurPiecewise}; }
PolicySpec PolicySpec::heur_linear() { return {PolicyKind::HeurLinear}; }

PolicySpec PolicySpec::custom(std::map<State, int> actions, std::string path) {
  PolicySpec s{PolicyKind::CustomTable};
  s.table = std::make_shared<const std::map<State, int>>(std::move(actions));
  s.custom_path = std::move(path);
  return s;
}

PolicySpec PolicySpec::optimal(std::shared_ptr<const ValueTable> table) {
  PolicySpec s{PolicyKind::OptimalOracle};
  s.oracle = std::move(table);
  return s;
}

std::string PolicySpec::name() const {
  switch (kind) {
    case PolicyKind::Pi1AlwaysNonCollab: return "pi1";
    case PolicyKind::Pi2CollabBelow: return "pi2:" + std::to_string(threshold);
    case PolicyKind::Pi3AlwaysCollab: return "pi3";
    case PolicyKind::Pi4CollabIfGpFree: return "pi4";
    case PolicyKind::HeurPiecewise: return "heur";
    case PolicyKind::HeurLinear: return "heur-lin";
    case PolicyKind::CustomTable: return "custom:" + custom_path;
    case PolicyKind::OptimalOracle: return "optimal";
  }
  return "?";
}

int policy_action(const PolicySpec& spec, const ModelParams& params, const State& s) {
  if (!is_decision_state(params, s))
    throw std::invalid_argument("policy queried at non-decision state " + s.str());
  switch (spec.kind) {
    case PolicyKind::Pi1AlwaysNonCollab:
      return 0;
    case PolicyKind::Pi2CollabBelow:
      return s.i < spec.threshold ? 1 : 0;
    case PolicyKind::Pi3AlwaysCollab:
      return 1;
    case PolicyKind::Pi4CollabIfGpFree:
      return s.l < params.cg ? 1 : 0;
    case PolicyKind::HeurPiecewise:
      return action_h(params, s);
    case PolicyKind::HeurLinear:
      return action_h_lin(params, s);
    case PolicyKind::CustomTable: {
      if (!spec.table) throw std::invalid_argument("custom policy has no table");
      const auto it = spec.table->find(s);
      if (it == spec.table->end())
        throw std::out_of_range("custom policy has no entry for state " + s.str());
      return it->second;
    }
    case PolicyKind::OptimalOracle:
      if (!spec.oracle)
        throw std::invalid_argument("optimal-oracle policy has no solved table attached");
      return spec.oracle->action(s);
  }
  throw std::logic_error("unreachable policy kind");
}

namespace {

std::map<State, int> load_custom_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open custom policy file: " + path);
  nlohmann::json j;
  in >> j;
  std::map<State, int> table;
  for (const auto& entry : j.at("actions")) {
    const auto& st = entry.at("state");
    State s{st.at(0).get<int>(), st.at(1).get<int>(), st.at(2).get<int>(),
            st.at(3).get<int>()};
    const int a = entry.at("action").get<int>();
    if (a != 0 && a != 1)
      throw std::invalid_argument("custom policy action must be 0 or 1");
    table[s] = a;
  }
  return table;
}

}  // namespace

PolicySpec parse_policy_spec(const std::string& text) {
  if (text == "pi1") return PolicySpec::pi1();
  if (text == "pi2") return PolicySpec::pi2();
  if (text.rfind("pi2:", 0) == 0) {
    const int t = std::stoi(text.substr(4));
    return PolicySpec::pi2(t);
  }
  if (text == "pi3") return PolicySpec::pi3();
  if (text == "pi4") return PolicySpec::pi4();
  if (text == "heur") return PolicySpec::heur_piecewise();
  if (text == "heur-lin") return PolicySpec::heur_linear();
  if (text == "optimal") return PolicySpec::optimal();
  if (text.rfind("custom:", 0) == 0) {
    const std::string path = text.substr(7);
    return PolicySpec::custom(load_custom_table(path), path);
  }
  throw std::invalid_argument("unknown policy: " + text);
}

}  // namespace clearq
