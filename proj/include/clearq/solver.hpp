#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "clearq/model.hpp"
#include "clearq/policies.hpp"

namespace clearq {

/// Perfect index (i,j,k,l) -> slot in a dense array, for all states with
/// level <= m_max (so i <= m_max/2 and j+k+l <= cp).
class StateIndexer {
 public:
  StateIndexer() = default;
  StateIndexer(int cp, int m_max);

  long slot(const State& s) const;  // -1 when out of range
  long slot_count() const { return (long)(i_cap_ + 1) * triple_count_; }

 private:
  int cp_ = 0, i_cap_ = 0, triple_count_ = 0;
  std::vector<int> triple_index_;  // (j,k,l) packed -> triple id, -1 if j+k+l > cp
};

enum class TableMode { Optimal, UnderPolicy };

/// Expected clearing cost for every state with level <= m_max, plus the chosen
/// action at each decision state. Immutable once a solve routine returns it.
class ValueTable {
 public:
  ValueTable(ModelParams params, int m_max, TableMode mode,
             std::optional<PolicySpec> policy);

  const ModelParams& params() const { return params_; }
  int m_max() const { return m_max_; }
  TableMode mode() const { return mode_; }
  const std::optional<PolicySpec>& policy() const { return policy_; }
  const std::vector<std::vector<State>>& layers() const { return layers_; }

  bool contains(const State& s) const;
  double value(const State& s) const;  // throws std::out_of_range when absent
  int action(const State& s) const;    // 0/1; throws when s is not a stored decision state

  /// Raw write access for the solve routines and the JSON importer.
  void set(const State& s, double value, int action = -1);

 private:
  long checked_slot(const State& s) const;

  ModelParams params_;
  int m_max_ = 0;
  TableMode mode_ = TableMode::Optimal;
  std::optional<PolicySpec> policy_;
  StateIndexer index_;
  std::vector<std::vector<State>> layers_;
  std::vector<double> values_;
  std::vector<std::int8_t> actions_;
};

/// Exact optimal values by backward induction over the level-layered DAG.
/// At each decision state the cheaper triage branch is taken; the recorded
/// action is 1 only when the collaborative branch is strictly smaller.
ValueTable solve_optimal(const ModelParams& params, int m_max);

/// Values under a fixed policy: the same recursion with the min replaced by
/// the policy's branch.
ValueTable evaluate_policy(const ModelParams& params, const PolicySpec& policy,
                           int m_max);

/// D(i,j,k,l) = v(i,j-1,k+1,l) - v(i,j-1,k,l+1); positive means collaborating
/// is strictly cheaper. Requires an Optimal-mode table and a decision state.
double value_difference(const ValueTable& table, const State& s);

/// Max over stored states of |v - rhs| / max(1,|v|) for the table's defining
/// equations. A freshly solved table stays below 1e-9.
double bellman_residual(const ValueTable& table);

struct ThresholdReport {
  int j = 0, k = 0, l = 0;
  int i_max = 0;
  std::vector<int> action_sequence;         // optimal action at (i,j,k,l), i = 0..i_max
  std::vector<int> sign_change_positions;   // i >= 1 where the action flips
  std::optional<int> stabilized_action;     // empty: not stabilized within i_max
};

/// Scans the optimal action along i at fixed (j,k,l) with j+k+l = cp.
/// The tail action counts as stabilized when the final constant run covers
/// at least the last quarter of the scan.
ThresholdReport find_threshold(const ModelParams& params, int j, int k, int l,
                               int i_max);

}  // namespace clearq
