#pragma once

#include <map>
#include <memory>
#include <string>

#include "clearq/model.hpp"

namespace clearq {

class ValueTable;

enum class PolicyKind {
  Pi1AlwaysNonCollab,
  Pi2CollabBelow,   // collaborate iff the upstream waiting count i < threshold
  Pi3AlwaysCollab,
  Pi4CollabIfGpFree,
  HeurPiecewise,
  HeurLinear,
  CustomTable,
  OptimalOracle,
};

/// A total rule over decision states. Cheap to copy; heavy payloads are shared.
struct PolicySpec {
  PolicyKind kind = PolicyKind::Pi1AlwaysNonCollab;
  int threshold = 10;                                       // Pi2CollabBelow
  std::shared_ptr<const std::map<State, int>> table;        // CustomTable
  std::shared_ptr<const ValueTable> oracle;                 // OptimalOracle
  std::string custom_path;                                  // provenance for name()

  static PolicySpec pi1();
  static PolicySpec pi2(int threshold = 10);
  static PolicySpec pi3();
  static PolicySpec pi4();
  static PolicySpec heur_piecewise();
  static PolicySpec heur_linear();
  static PolicySpec custom(std::map<State, int> actions, std::string path = "");
  static PolicySpec optimal(std::shared_ptr<const ValueTable> table = nullptr);

  /// Parseable identifier: "pi1", "pi2:<T>", "pi3", "pi4", "heur",
  /// "heur-lin", "optimal", "custom:<path>".
  std::string name() const;
};

/// Action at a decision state. Throws on non-decision states, on missing
/// custom-table entries, and on an OptimalOracle with no table attached.
int policy_action(const PolicySpec& spec, const ModelParams& params, const State& s);

/// Inverse of PolicySpec::name(). "custom:<path>" loads the JSON action table.
PolicySpec parse_policy_spec(const std::string& text);

}  // namespace clearq
