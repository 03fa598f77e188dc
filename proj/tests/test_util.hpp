#pragma once

#include <random>

#include "clearq/model.hpp"

namespace clearq::testutil {

// Deterministic random problem instances for property checks.
inline ModelParams random_params(std::mt19937_64& rng, int cp_min = 1,
                                 int cp_max = 4, bool cg_at_most_cp = true) {
  std::uniform_int_distribution<int> cp_dist(cp_min, cp_max);
  std::uniform_real_distribution<double> rate(0.5, 8.0);
  std::uniform_real_distribution<double> cost(0.05, 2.0);
  ModelParams p;
  p.cp = cp_dist(rng);
  p.cg = std::uniform_int_distribution<int>(1, cg_at_most_cp ? p.cp : p.cp + 2)(rng);
  p.mu0 = rate(rng);
  p.mu1 = rate(rng);
  p.mu2 = rate(rng);
  p.h0 = cost(rng);
  p.h1 = cost(rng);
  p.h2 = cost(rng);
  return p;
}

// Uniform pick from one enumeration layer (lexicographic order inside).
inline State random_state(const ModelParams& p, std::mt19937_64& rng, int m_max) {
  const auto layers = enumerate_states(p, m_max);
  for (;;) {
    const auto& layer = layers[std::uniform_int_distribution<std::size_t>(
        0, layers.size() - 1)(rng)];
    if (layer.empty()) continue;
    return layer[std::uniform_int_distribution<std::size_t>(0, layer.size() - 1)(rng)];
  }
}

}  // namespace clearq::testutil
