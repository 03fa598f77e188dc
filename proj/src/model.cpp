#include "clearq/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace clearq {

void ModelParams::validate() const {
  if (cp < 1) throw std::invalid_argument("cp must be a positive integer");
  if (cg < 1) throw std::invalid_argument("cg must be a positive integer");
  if (!(mu0 > 0.0) || !(mu1 > 0.0) || !(mu2 > 0.0) ||
      !std::isfinite(mu0) || !std::isfinite(mu1) || !std::isfinite(mu2))
    throw std::invalid_argument("service rates must be finite and strictly positive");
  if (!(h0 >= 0.0) || !(h1 >= 0.0) || !(h2 >= 0.0) ||
      !std::isfinite(h0) || !std::isfinite(h1) || !std::isfinite(h2))
    throw std::invalid_argument("holding costs must be finite and nonnegative");
}

std::string State::str() const {
  std::ostringstream os;
  os << "(" << i << "," << j << "," << k << "," << l << ")";
  return os.str();
}

bool in_state_space(const ModelParams& params, const State& s) {
  if (s.i < 0 || s.j < 0 || s.k < 0 || s.l < 0) return false;
  const int busy = s.j + s.k + s.l;
  if (busy == params.cp) return true;
  return s.i == 0 && busy < params.cp;
}

bool is_decision_state(const ModelParams& params, const State& s) {
  return in_state_space(params, s) && s.j >= 1;
}

void require_feasible(const ModelParams& params, const State& s) {
  if (!in_state_space(params, s))
    throw std::domain_error("infeasible state " + s.str() + " for cp=" +
                            std::to_string(params.cp));
}

double total_rate(const ModelParams& params, const State& s) {
  require_feasible(params, s);
  if (s.is_zero()) throw std::domain_error("absorbing state has no rate");
  return s.j * params.mu0 + s.k * params.mu1 + std::min(s.l, params.cg) * params.mu2;
}

double cost_rate(const ModelParams& params, const State& s) {
  require_feasible(params, s);
  return (s.i + s.j) * params.h0 + s.k * params.h1 + s.l * params.h2;
}

std::vector<Transition> transitions(const ModelParams& params, const State& s,
                                    int action) {
  require_feasible(params, s);
  if (s.is_zero()) throw std::domain_error("absorbing state has no transitions");
  if (s.j == 0 && action != -1)
    throw std::invalid_argument("action supplied for a state with no pending decision");
  if (s.j >= 1 && action != 0 && action != 1)
    throw std::invalid_argument("decision state requires action 0 or 1");

  std::vector<Transition> out;
  if (s.j >= 1) {
    State next = action == 0 ? State{s.i, s.j - 1, s.k + 1, s.l}
                             : State{s.i, s.j - 1, s.k, s.l + 1};
    out.push_back({s.j * params.mu0, next, EventKind::TriageDone});
  }
  if (s.k >= 1) {
    State next = s.i == 0 ? State{0, s.j, s.k - 1, s.l}
                          : State{s.i - 1, s.j + 1, s.k - 1, s.l};
    out.push_back({s.k * params.mu1, next, EventKind::Station1Done});
  }
  if (s.l >= 1) {
    State next = s.i == 0 ? State{0, s.j, s.k, s.l - 1}
                          : State{s.i - 1, s.j + 1, s.k, s.l - 1};
    out.push_back({std::min(s.l, params.cg) * params.mu2, next,
                   EventKind::Station2Done});
  }
  return out;
}

std::vector<std::vector<State>> enumerate_states(const ModelParams& params,
                                                 int m_max) {
  params.validate();
  if (m_max < 0) throw std::invalid_argument("m_max must be nonnegative");

  std::vector<std::vector<State>> layers(m_max + 1);
  for (int m = 0; m <= m_max; ++m) {
    auto& layer = layers[m];
    for (int j = 0; j <= params.cp; ++j)
      for (int k = 0; j + k <= params.cp; ++k)
        for (int l = 0; j + k + l <= params.cp; ++l) {
          const int busy = j + k + l;
          const int base = 2 * j + k + l;
          if (busy < params.cp) {
            if (base == m) layer.push_back({0, j, k, l});
          } else {
            const int rem = m - base;
            if (rem >= 0 && rem % 2 == 0) layer.push_back({rem / 2, j, k, l});
          }
        }
    std::sort(layer.begin(), layer.end());
  }
  return layers;
}

}  // namespace clearq
