#pragma once

#include <json.hpp>

#include "clearq/heuristics.hpp"
#include "clearq/model.hpp"
#include "clearq/simulator.hpp"
#include "clearq/solver.hpp"

namespace clearq {

nlohmann::json params_to_json(const ModelParams& params);
ModelParams params_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const State& s);  // 4-element array [i,j,k,l]
State state_from_json(const nlohmann::json& j);

/// Params, m_max, mode, and one {state, value, action} entry per stored state
/// in deterministic layer order; decision states carry their action. Values
/// round-trip exactly. UnderPolicy tables keep the policy's name string; a
/// reimported "optimal" policy has no oracle attached.
nlohmann::json value_table_to_json(const ValueTable& table);
ValueTable value_table_from_json(const nlohmann::json& j);

nlohmann::json sim_result_to_json(const SimResult& r);

nlohmann::json constants_to_json(const HeuristicConstants& hc);
nlohmann::json threshold_rule_to_json(const ThresholdRule& rule);

}  // namespace clearq
