#pragma once

#include <string>
#include <vector>

#include "clearq/model.hpp"
#include "clearq/policies.hpp"

namespace clearq {

struct StaffingPair {
  int cp = 2, cg = 1;
};

/// Benchmark sweep definition. Defaults reproduce the standard grid:
/// h1 = 1, mu1 = 4 fixed; h0, h2, mu0, mu2 varied; six staffing pairs;
/// evaluation at every decision state with upstream queue i0.
struct SweepConfig {
  std::vector<StaffingPair> staffing;
  std::vector<double> h0_list, h2_list, mu0_list, mu2_list;
  double h1 = 1.0;
  double mu1 = 4.0;
  int i0 = 20;
  std::vector<PolicySpec> policies;
  bool enforce_assumption = true;  ///< keep only strict h2/mu2 < h1/mu1
  int jobs = 1;

  static SweepConfig defaults();
};

struct ParamCombo {
  int id = 0;
  double h0 = 0, h2 = 0, mu0 = 0, mu2 = 0;
};

/// Cartesian product of (h0, h2, mu0, mu2), filtered by the cost-efficiency
/// assumption when enabled; ordering is deterministic (h0, h2, mu0, mu2 nesting).
std::vector<ParamCombo> build_grid(const SweepConfig& config);

struct SweepRecord {
  int config_id = 0;
  int cp = 0, cg = 0;
  double h0 = 0, h2 = 0, mu0 = 0, mu2 = 0;
  State initial;
  std::string policy;
  double v_opt = 0, v_pi = 0, err_pct = 0;
};

/// Solves each (combo, staffing) instance once, evaluates every policy, and
/// emits one record per (initial decision state with i = i0, policy).
/// Output ordering is (combo, staffing, state, policy) regardless of jobs.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

struct BlockStats {
  int cp = 0, cg = 0;
  bool mu2_gt_mu1 = false;  ///< regime: false is the mu1 >= mu2 block
  std::string policy;
  double max_err = 0, avg_err = 0, std_err = 0;  // percent, population std
  long count = 0;
};

/// Groups records by (staffing, regime, policy); mu1 fixes the regime boundary
/// (combos with mu2 == mu1 fall into the mu1 >= mu2 block).
std::vector<BlockStats> aggregate(const std::vector<SweepRecord>& records,
                                  double mu1);

std::string records_csv(const std::vector<SweepRecord>& records);
std::string block_stats_csv(const std::vector<BlockStats>& blocks);

/// Two aligned text tables (one per regime) of max/avg/std error rows.
std::string format_error_tables(const std::vector<BlockStats>& blocks,
                                const SweepConfig& config);

}  // namespace clearq
