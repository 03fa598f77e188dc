#include "clearq/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "clearq/solver.hpp"

namespace clearq {

SweepConfig SweepConfig::defaults() {
  SweepConfig c;
  c.staffing = {{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 3}};
  c.h0_list = {0.05, 0.1, 0.2, 0.5, 1};
  c.h2_list = {0.1, 0.2, 0.5, 1, 1.5};
  c.mu0_list = {1, 2, 4, 8, 16};
  c.mu2_list = {1.6, 2, 3.2, 4, 5, 8, 10};
  c.h1 = 1.0;
  c.mu1 = 4.0;
  c.i0 = 20;
  c.policies = {PolicySpec::heur_piecewise(), PolicySpec::heur_linear(),
                PolicySpec::pi1(), PolicySpec::pi2(10), PolicySpec::pi3(),
                PolicySpec::pi4()};
  c.enforce_assumption = true;
  return c;
}

std::vector<ParamCombo> build_grid(const SweepConfig& config) {
  if (config.h0_list.empty() || config.h2_list.empty() ||
      config.mu0_list.empty() || config.mu2_list.empty())
    throw std::invalid_argument("sweep parameter lists must be nonempty");

  std::vector<ParamCombo> combos;
  int id = 0;
  for (double h0 : config.h0_list)
    for (double h2 : config.h2_list)
      for (double mu0 : config.mu0_list)
        for (double mu2 : config.mu2_list) {
          if (config.enforce_assumption &&
              !(h2 / mu2 < config.h1 / config.mu1))
            continue;
          combos.push_back({id++, h0, h2, mu0, mu2});
        }
  return combos;
}

namespace {

std::vector<State> initial_states(int cp, int i0) {
  std::vector<State> states;
  for (int j = 1; j <= cp; ++j)
    for (int k = 0; j + k <= cp; ++k)
      states.push_back({i0, j, k, cp - j - k});
  std::sort(states.begin(), states.end());
  return states;
}

std::vector<SweepRecord> run_one(const SweepConfig& config,
                                 const ParamCombo& combo,
                                 const StaffingPair& staff) {
  ModelParams p;
  p.cp = staff.cp;
  p.cg = staff.cg;
  p.mu0 = combo.mu0;
  p.mu1 = config.mu1;
  p.mu2 = combo.mu2;
  p.h0 = combo.h0;
  p.h1 = config.h1;
  p.h2 = combo.h2;

  const int m_max = 2 * (config.i0 + p.cp);
  const auto optimal =
      std::make_shared<const ValueTable>(solve_optimal(p, m_max));

  std::vector<ValueTable> tables;
  tables.reserve(config.policies.size());
  for (const PolicySpec& spec : config.policies) {
    PolicySpec bound = spec;
    if (bound.kind == PolicyKind::OptimalOracle && !bound.oracle)
      bound.oracle = optimal;
    tables.push_back(evaluate_policy(p, bound, m_max));
  }

  std::vector<SweepRecord> records;
  for (const State& s : initial_states(p.cp, config.i0)) {
    const double v_opt = optimal->value(s);
    for (std::size_t pi = 0; pi < config.policies.size(); ++pi) {
      const double v_pi = tables[pi].value(s);
      records.push_back({combo.id, p.cp, p.cg, combo.h0, combo.h2, combo.mu0,
                         combo.mu2, s, config.policies[pi].name(), v_opt, v_pi,
                         100.0 * (v_pi - v_opt) / v_opt});
    }
  }
  return records;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  const auto combos = build_grid(config);
  const long tasks = (long)combos.size() * config.staffing.size();
  std::vector<std::vector<SweepRecord>> results(tasks);

  auto work = [&](long t) {
    const auto& combo = combos[t / config.staffing.size()];
    const auto& staff = config.staffing[t % config.staffing.size()];
    try {
      results[t] = run_one(config, combo, staff);
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep failed at combo " +
                               std::to_string(combo.id) + " staffing (" +
                               std::to_string(staff.cp) + "," +
                               std::to_string(staff.cg) + "): " + e.what());
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (long t = 0; t < tasks; ++t) work(t);
  } else {
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (long t; (t = next.fetch_add(1)) < tasks;) {
          try {
            work(t);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  std::vector<SweepRecord> flat;
  for (auto& chunk : results)
    flat.insert(flat.end(), chunk.begin(), chunk.end());

  std::size_t state_total = 0;
  for (const auto& staff : config.staffing)
    state_total += initial_states(staff.cp, config.i0).size();
  if (flat.size() != combos.size() * state_total * config.policies.size())
    throw std::logic_error("sweep record count does not match grid x states x policies");
  return flat;
}

std::vector<BlockStats> aggregate(const std::vector<SweepRecord>& records,
                                  double mu1) {
  if (records.empty()) throw std::invalid_argument("no records to aggregate");

  struct Group {
    BlockStats stats;
    std::vector<double> errs;
  };
  std::vector<Group> groups;
  auto find_group = [&](const SweepRecord& r, bool regime) -> Group& {
    for (auto& g : groups)
      if (g.stats.cp == r.cp && g.stats.cg == r.cg &&
          g.stats.mu2_gt_mu1 == regime && g.stats.policy == r.policy)
        return g;
    groups.push_back({{r.cp, r.cg, regime, r.policy, 0, 0, 0, 0}, {}});
    return groups.back();
  };

  for (const auto& r : records)
    find_group(r, r.mu2 > mu1).errs.push_back(r.err_pct);

  std::vector<BlockStats> out;
  for (auto& g : groups) {
    double sum = 0, maxe = g.errs.front();
    for (double e : g.errs) {
      sum += e;
      maxe = std::max(maxe, e);
    }
    const double mean = sum / g.errs.size();
    double ss = 0;
    for (double e : g.errs) ss += (e - mean) * (e - mean);
    g.stats.max_err = maxe;
    g.stats.avg_err = mean;
    g.stats.std_err = std::sqrt(ss / g.errs.size());  // population std
    g.stats.count = (long)g.errs.size();
    out.push_back(g.stats);
  }
  return out;
}

namespace {

std::string num(double v, const char* fmt = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::string records_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << "config_id,cp,cg,h0,h2,mu0,mu2,i,j,k,l,policy,v_opt,v_pi,err_pct\n";
  for (const auto& r : records)
    os << r.config_id << ',' << r.cp << ',' << r.cg << ',' << num(r.h0, "%g")
       << ',' << num(r.h2, "%g") << ',' << num(r.mu0, "%g") << ','
       << num(r.mu2, "%g") << ',' << r.initial.i << ',' << r.initial.j << ','
       << r.initial.k << ',' << r.initial.l << ',' << r.policy << ','
       << num(r.v_opt) << ',' << num(r.v_pi) << ',' << num(r.err_pct) << '\n';
  return os.str();
}

std::string block_stats_csv(const std::vector<BlockStats>& blocks) {
  std::ostringstream os;
  os << "cp,cg,regime,policy,max_err,avg_err,std_err,count\n";
  for (const auto& b : blocks)
    os << b.cp << ',' << b.cg << ',' << (b.mu2_gt_mu1 ? "mu1<mu2" : "mu1>=mu2")
       << ',' << b.policy << ',' << num(b.max_err) << ',' << num(b.avg_err)
       << ',' << num(b.std_err) << ',' << b.count << '\n';
  return os.str();
}

std::string format_error_tables(const std::vector<BlockStats>& blocks,
                                const SweepConfig& config) {
  auto lookup = [&](const StaffingPair& st, bool regime,
                    const std::string& policy) -> const BlockStats* {
    for (const auto& b : blocks)
      if (b.cp == st.cp && b.cg == st.cg && b.mu2_gt_mu1 == regime &&
          b.policy == policy)
        return &b;
    return nullptr;
  };

  std::ostringstream os;
  for (bool regime : {false, true}) {
    os << "Relative errors (%) at initial states (i0=" << config.i0
       << ", j0, k0, l0), " << (regime ? "mu1 < mu2" : "mu1 >= mu2") << "\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-12s %-10s", "policy", "stat");
    os << line;
    for (const auto& st : config.staffing) {
      std::snprintf(line, sizeof line, " %7s", ("(" + std::to_string(st.cp) +
                                                "," + std::to_string(st.cg) +
                                                ")").c_str());
      os << line;
    }
    os << '\n';
    for (const auto& policy : config.policies) {
      const std::string pname = policy.name();
      const char* stats[] = {"max", "avg", "std"};
      for (int row = 0; row < 3; ++row) {
        std::snprintf(line, sizeof line, "%-12s %-10s",
                      row == 0 ? pname.c_str() : "", stats[row]);
        os << line;
        for (const auto& st : config.staffing) {
          const BlockStats* b = lookup(st, regime, pname);
          if (!b) {
            std::snprintf(line, sizeof line, " %7s", "-");
          } else {
            const double v = row == 0   ? b->max_err
                             : row == 1 ? b->avg_err
                                        : b->std_err;
            std::snprintf(line, sizeof line, " %7.2f", v);
          }
          os << line;
        }
        os << '\n';
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace clearq
