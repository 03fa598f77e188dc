#include "clearq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace clearq {

namespace {
constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();
}

StateIndexer::StateIndexer(int cp, int m_max) : cp_(cp), i_cap_(m_max / 2) {
  const int span = cp + 1;
  triple_index_.assign(span * span * span, -1);
  for (int j = 0; j <= cp; ++j)
    for (int k = 0; j + k <= cp; ++k)
      for (int l = 0; j + k + l <= cp; ++l)
        triple_index_[(j * span + k) * span + l] = triple_count_++;
}

long StateIndexer::slot(const State& s) const {
  if (s.i < 0 || s.i > i_cap_ || s.j < 0 || s.k < 0 || s.l < 0) return -1;
  if (s.j > cp_ || s.k > cp_ || s.l > cp_) return -1;
  const int span = cp_ + 1;
  const int t = triple_index_[(s.j * span + s.k) * span + s.l];
  if (t < 0) return -1;
  return (long)s.i * triple_count_ + t;
}

ValueTable::ValueTable(ModelParams params, int m_max, TableMode mode,
                       std::optional<PolicySpec> policy)
    : params_(params), m_max_(m_max), mode_(mode), policy_(std::move(policy)) {
  params_.validate();
  if (m_max < 0) throw std::invalid_argument("m_max must be nonnegative");
  index_ = StateIndexer(params_.cp, m_max);
  layers_ = enumerate_states(params_, m_max);
  values_.assign(index_.slot_count(), kAbsent);
  actions_.assign(index_.slot_count(), -1);
}

long ValueTable::checked_slot(const State& s) const {
  const long slot = index_.slot(s);
  if (slot < 0 || std::isnan(values_[slot]))
    throw std::out_of_range("state " + s.str() + " outside value table");
  return slot;
}

bool ValueTable::contains(const State& s) const {
  const long slot = index_.slot(s);
  return slot >= 0 && !std::isnan(values_[slot]);
}

double ValueTable::value(const State& s) const { return values_[checked_slot(s)]; }

int ValueTable::action(const State& s) const {
  const int a = actions_[checked_slot(s)];
  if (a < 0)
    throw std::out_of_range("no action recorded at non-decision state " + s.str());
  return a;
}

void ValueTable::set(const State& s, double value, int action) {
  require_feasible(params_, s);
  const long slot = index_.slot(s);
  if (slot < 0 || s.level() > m_max_)
    throw std::out_of_range("state " + s.str() + " outside table range");
  values_[slot] = value;
  actions_[slot] = (std::int8_t)action;
}

namespace {

// Single Bellman step. In optimal mode `policy` is null and the cheaper triage
// branch is taken; otherwise the policy fixes the branch. Returns the value
// and records the chosen action (or -1 at non-decision states).
double bellman_rhs(const ModelParams& p, const ValueTable& t, const State& s,
                   const PolicySpec* policy, int* action_out) {
  if (action_out) *action_out = -1;
  if (s.is_zero()) return 0.0;

  const double d = total_rate(p, s);
  double acc = cost_rate(p, s) / d;

  if (s.j >= 1) {
    const State solo{s.i, s.j - 1, s.k + 1, s.l};
    const State collab{s.i, s.j - 1, s.k, s.l + 1};
    int act;
    double branch;
    if (policy) {
      act = policy_action(*policy, p, s);
      if (act != 0 && act != 1)
        throw std::domain_error("policy returned out-of-range action");
      branch = act == 0 ? t.value(solo) : t.value(collab);
    } else {
      const double v0 = t.value(solo), v1 = t.value(collab);
      act = v1 < v0 ? 1 : 0;  // tie -> non-collaborative
      branch = std::min(v0, v1);
    }
    if (action_out) *action_out = act;
    acc += s.j * p.mu0 / d * branch;
  }
  if (s.k >= 1) {
    const State next = s.i == 0 ? State{0, s.j, s.k - 1, s.l}
                                : State{s.i - 1, s.j + 1, s.k - 1, s.l};
    acc += s.k * p.mu1 / d * t.value(next);
  }
  if (s.l >= 1) {
    const State next = s.i == 0 ? State{0, s.j, s.k, s.l - 1}
                                : State{s.i - 1, s.j + 1, s.k, s.l - 1};
    acc += std::min(s.l, p.cg) * p.mu2 / d * t.value(next);
  }
  return acc;
}

ValueTable solve(const ModelParams& params, int m_max, const PolicySpec* policy) {
  params.validate();
  ValueTable table(params, m_max,
                   policy ? TableMode::UnderPolicy : TableMode::Optimal,
                   policy ? std::optional<PolicySpec>(*policy) : std::nullopt);
  for (const auto& layer : table.layers())
    for (const State& s : layer) {
      int action = -1;
      const double v = bellman_rhs(params, table, s, policy, &action);
      table.set(s, v, action);
    }
  return table;
}

}  // namespace

ValueTable solve_optimal(const ModelParams& params, int m_max) {
  return solve(params, m_max, nullptr);
}

ValueTable evaluate_policy(const ModelParams& params, const PolicySpec& policy,
                           int m_max) {
  return solve(params, m_max, &policy);
}

double value_difference(const ValueTable& table, const State& s) {
  if (table.mode() != TableMode::Optimal)
    throw std::invalid_argument("value difference requires an optimal table");
  if (!is_decision_state(table.params(), s))
    throw std::invalid_argument("value difference requires a decision state");
  return table.value({s.i, s.j - 1, s.k + 1, s.l}) -
         table.value({s.i, s.j - 1, s.k, s.l + 1});
}

double bellman_residual(const ValueTable& table) {
  const PolicySpec* policy =
      table.mode() == TableMode::UnderPolicy ? &*table.policy() : nullptr;
  double worst = 0.0;
  for (const auto& layer : table.layers())
    for (const State& s : layer) {
      const double lhs = table.value(s);
      const double rhs = bellman_rhs(table.params(), table, s, policy, nullptr);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
  return worst;
}

ThresholdReport find_threshold(const ModelParams& params, int j, int k, int l,
                               int i_max) {
  params.validate();
  if (i_max < 0) throw std::invalid_argument("i_max must be nonnegative");
  if (j < 1 || k < 0 || l < 0 || j + k + l != params.cp)
    throw std::invalid_argument("scan requires j >= 1 and j+k+l = cp");

  const State top{i_max, j, k, l};
  const ValueTable table = solve_optimal(params, top.level());

  ThresholdReport report{j, k, l, i_max, {}, {}, std::nullopt};
  report.action_sequence.reserve(i_max + 1);
  for (int i = 0; i <= i_max; ++i)
    report.action_sequence.push_back(table.action({i, j, k, l}));
  for (int i = 1; i <= i_max; ++i)
    if (report.action_sequence[i] != report.action_sequence[i - 1])
      report.sign_change_positions.push_back(i);

  const int last_change = report.sign_change_positions.empty()
                              ? 0
                              : report.sign_change_positions.back();
  const int tail = i_max - last_change + 1;
  if (tail >= (i_max + 1) / 4 + 1)
    report.stabilized_action = report.action_sequence.back();
  return report;
}

}  // namespace clearq
