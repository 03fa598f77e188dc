#pragma once

#include <cstdint>
#include <string>

#include "clearq/model.hpp"
#include "clearq/policies.hpp"

namespace clearq {

/// Counter-based uniform draw in (0, 1]. A value is a pure function of
/// (seed, replication, event_index, dim) hashed through a chain of splitmix64
/// finalizers, so replications are independent substreams and draws can be
/// generated in any order. This derivation is part of the output contract:
/// identical inputs reproduce identical trajectories bit for bit.
double sim_uniform(std::uint64_t seed, std::uint64_t replication,
                   std::uint64_t event_index, std::uint64_t dim);

/// One exponential-clock trajectory from `initial` to the empty state;
/// returns the accumulated holding cost. Executes exactly initial.level()
/// events (optionally reported through event_count).
double simulate_once(const ModelParams& params, const PolicySpec& policy,
                     const State& initial, std::uint64_t seed,
                     std::uint64_t replication, long* event_count = nullptr);

struct SimResult {
  long replications = 0;
  double mean_cost = 0.0;
  double std_error = 0.0;  ///< sample std / sqrt(n); 0 when not applicable
  bool se_valid = false;   ///< false for the degenerate single-replication case
  std::uint64_t seed = 0;
  State initial;
  std::string policy;
};

/// n >= 1 replications on substreams (seed, 0..n-1). Reruns with the same
/// seed are bit-identical.
SimResult simulate_many(const ModelParams& params, const PolicySpec& policy,
                        const State& initial, long n, std::uint64_t seed);

}  // namespace clearq
