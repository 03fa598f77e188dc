#pragma once

#include <compare>
#include <string>
#include <vector>

namespace clearq {

/// One problem instance: staffing counts, service rates, holding costs.
struct ModelParams {
  int cp = 1;  ///< number of NPs
  int cg = 1;  ///< number of GPs
  double mu0 = 1.0, mu1 = 1.0, mu2 = 1.0;  ///< service rates (triage, solo, collab)
  double h0 = 0.0, h1 = 0.0, h2 = 0.0;     ///< holding costs per patient per unit time

  /// Throws std::invalid_argument if counts or rates are out of range.
  void validate() const;

  /// Whether collaborative care is the more cost-efficient single service.
  bool prefers_collab() const { return h1 / mu1 > h2 / mu2; }
};

/// System state (i, j, k, l): waiting, in triage, in solo service, at the
/// collaborative station (in service + queued with their NP).
struct State {
  int i = 0, j = 0, k = 0, l = 0;

  bool operator==(const State&) const = default;
  auto operator<=>(const State&) const = default;  // lexicographic (i,j,k,l)

  bool is_zero() const { return i == 0 && j == 0 && k == 0 && l == 0; }

  /// Remaining service completions. Every transition lowers this by one,
  /// so the transition graph is a DAG layered by level().
  int level() const { return 2 * (i + j) + k + l; }

  std::string str() const;
};

/// Membership in the state space: queueing upstream only when all NPs are busy.
bool in_state_space(const ModelParams& params, const State& s);

/// A decision is pending exactly when a triage service can complete (j >= 1).
bool is_decision_state(const ModelParams& params, const State& s);

/// Throws std::domain_error when s is outside the state space.
void require_feasible(const ModelParams& params, const State& s);

/// Overall service rate d(j,k,l) = j*mu0 + k*mu1 + min(l,cg)*mu2.
/// Throws on the absorbing zero state, which has no rate.
double total_rate(const ModelParams& params, const State& s);

/// Instantaneous holding-cost rate (i+j)*h0 + k*h1 + l*h2.
double cost_rate(const ModelParams& params, const State& s);

enum class EventKind { TriageDone, Station1Done, Station2Done };

struct Transition {
  double rate;
  State next;
  EventKind kind;
};

/// Outgoing transitions of a nonzero state. `action` (0 = solo, 1 = collab)
/// steers the triage-completion branch and is required iff j >= 1; pass -1
/// for states without a pending decision.
///
/// With i >= 1 a downstream completion pulls one waiting patient into triage;
/// a triage completion keeps i unchanged because the NP stays with the patient.
std::vector<Transition> transitions(const ModelParams& params, const State& s,
                                    int action = -1);

/// All states with level() <= m_max, grouped by level ascending and ordered
/// lexicographically within each layer. Closed under transitions: every
/// target of a listed state appears in the previous layer.
std::vector<std::vector<State>> enumerate_states(const ModelParams& params,
                                                 int m_max);

}  // namespace clearq
