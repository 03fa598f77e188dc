#include "clearq/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clearq {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double sim_uniform(std::uint64_t seed, std::uint64_t replication,
                   std::uint64_t event_index, std::uint64_t dim) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ (replication * 0xd1342543de82ef95ULL));
  h = mix64(h ^ (event_index * 0x2545f4914f6cdd1dULL));
  h = mix64(h ^ dim);
  // (0, 1]: zero excluded so the inverse-transform exponential stays finite
  return ((h >> 11) + 1) * 0x1.0p-53;
}

double simulate_once(const ModelParams& params, const PolicySpec& policy,
                     const State& initial, std::uint64_t seed,
                     std::uint64_t replication, long* event_count) {
  params.validate();
  require_feasible(params, initial);

  State s = initial;
  double cost = 0.0;
  long events = 0;
  while (!s.is_zero()) {
    const double d = total_rate(params, s);
    const double sojourn = -std::log(sim_uniform(seed, replication, events, 0)) / d;
    cost += cost_rate(params, s) * sojourn;

    // pick lies in (0, d]; clamp the boundary draw into the last active clock
    const double pick = sim_uniform(seed, replication, events, 1) * d;
    const double rates[3] = {s.j * params.mu0, s.k * params.mu1,
                             std::min(s.l, params.cg) * params.mu2};
    int event = -1;
    double cum = 0.0;
    for (int c = 0; c < 3; ++c) {
      if (rates[c] <= 0.0) continue;
      cum += rates[c];
      event = c;
      if (pick < cum) break;
    }
    if (event == 0) {
      const int a = policy_action(policy, params, s);
      s = a == 0 ? State{s.i, s.j - 1, s.k + 1, s.l}
                 : State{s.i, s.j - 1, s.k, s.l + 1};
    } else if (event == 1) {
      s = s.i == 0 ? State{0, s.j, s.k - 1, s.l}
                   : State{s.i - 1, s.j + 1, s.k - 1, s.l};
    } else {
      s = s.i == 0 ? State{0, s.j, s.k, s.l - 1}
                   : State{s.i - 1, s.j + 1, s.k, s.l - 1};
    }
    ++events;
  }
  if (event_count) *event_count = events;
  return cost;
}

SimResult simulate_many(const ModelParams& params, const PolicySpec& policy,
                        const State& initial, long n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("replication count must be >= 1");

  double mean = 0.0, m2 = 0.0;  // Welford running moments
  for (long r = 0; r < n; ++r) {
    const double x = simulate_once(params, policy, initial, seed, (std::uint64_t)r);
    const double delta = x - mean;
    mean += delta / (r + 1);
    m2 += delta * (x - mean);
  }

  SimResult result;
  result.replications = n;
  result.mean_cost = mean;
  result.se_valid = n >= 2;
  result.std_error = n >= 2 ? std::sqrt(m2 / (n - 1) / n) : 0.0;
  result.seed = seed;
  result.initial = initial;
  result.policy = policy.name();
  return result;
}

}  // namespace clearq
