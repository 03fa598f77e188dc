#include "clearq/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace clearq {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// ceil(num/den) for den > 0, exact in integer arithmetic
long iceil(long num, long den) {
  const long q = num / den;
  return q + (num % den > 0 ? 1 : 0);
}

// largest integer n with n * mu1 < cg * mu2; scanned upward with exact
// comparisons because the strict inequality is boundary-sensitive
int largest_below_ratio(const ModelParams& p) {
  long long n = std::max(0LL, (long long)std::floor(p.cg * p.mu2 / p.mu1) - 3);
  while ((double)(n + 1) * p.mu1 < p.cg * p.mu2) ++n;
  return (int)n;
}

void require_decision(const ModelParams& p, const State& s) {
  if (!is_decision_state(p, s))
    throw std::invalid_argument("heuristic requires a decision state, got " + s.str());
}

}  // namespace

HeuristicConstants constants(const ModelParams& p, int k, int l) {
  p.validate();
  if (k < 0 || l < 0) throw std::invalid_argument("k and l must be nonnegative");
  if (k + l >= p.cp) throw std::invalid_argument("no deciding NP: need k + l <= cp - 1");

  HeuristicConstants hc;
  hc.j_implied = p.cp - k - l;
  hc.b = p.h1 / p.mu1 - p.h2 / p.mu2;
  hc.c = p.h0 / p.cp * (1.0 / p.mu1 - 1.0 / p.mu2);
  hc.c_prime = -p.h0 / (p.cg * p.mu2);
  hc.b_prime = (p.h1 - p.h2) / p.mu1 - p.cp * p.h2 / (p.cg * p.mu2);
  hc.w = hc.j_implied * p.mu0 /
         (hc.j_implied * p.mu0 + k * p.mu1 + p.cg * p.mu2);
  if (l >= p.cg) {
    hc.b_l = p.h1 / p.mu1 - (l + 1.0) / p.cg * (p.h2 / p.mu2);
    hc.c_l = p.h0 / p.cp * (1.0 / p.mu1 - (l + 1.0) / (p.cg * p.mu2));
    hc.y_l = p.cp - l - 1 + p.cg * p.mu2 / p.mu1;
    if (hc.c > 0.0) hc.ell_prime = largest_below_ratio(p);
  }
  return hc;
}

namespace {

// Upstream component of the saturated-station piecewise form, cases keyed on
// the signs of c and c_l. Includes the h0 factor, excludes the b_l intercept.
double saturated_upstream(const ModelParams& p, const HeuristicConstants& hc,
                          const State& s) {
  const double pool = p.cg * p.mu2;
  if (hc.c <= 0.0) {
    double sum = 0.0;
    for (int r = p.cg; r <= s.l; ++r) sum += iceil(s.i - s.k - r, p.cp) / pool;
    return (iceil(s.i - s.k, p.cp) * (1.0 / p.mu1 - 1.0 / p.mu2) - sum) * p.h0;
  }
  if (*hc.c_l <= 0.0) {
    const int lp = *hc.ell_prime;
    double sum = 0.0;
    for (int r = lp + 1; r <= s.l; ++r) sum += iceil(s.i - s.k - r, p.cp) / pool;
    return (iceil(s.i - s.k - lp, p.cp) * (1.0 / p.mu1 - (lp + 1.0) / pool) - sum) *
           p.h0;
  }
  return iceil(s.i - s.l, p.cp) * (1.0 / p.mu1 - (s.l + 1.0) / pool) * p.h0;
}

double h_impl(const ModelParams& p, const State& s, bool linear) {
  require_decision(p, s);
  const auto hc = constants(p, s.k, s.l);

  if (s.i == 0) return s.l < p.cg ? hc.b : *hc.b_l;

  if (s.l >= p.cg) {
    if (*hc.c_l <= 0.0 && *hc.b_l <= 0.0) return -1.0;  // sentinel, sign only
    const double h_zero = linear ? s.i * *hc.c_l + *hc.b_l
                                 : saturated_upstream(p, hc, s) + *hc.b_l;
    const double h_inf = (s.i - *hc.y_l) * hc.c_prime + hc.b_prime;
    return hc.w * h_inf + (1.0 - hc.w) * h_zero;
  }

  if (linear) return s.i * hc.c + hc.b;
  if (hc.c <= 0.0)
    return iceil(s.i - s.k, p.cp) * (1.0 / p.mu1 - 1.0 / p.mu2) * p.h0 + hc.b;
  return hc.b;
}

}  // namespace

double h_piecewise(const ModelParams& p, const State& s) { return h_impl(p, s, false); }
double h_linear(const ModelParams& p, const State& s) { return h_impl(p, s, true); }

int action_h(const ModelParams& p, const State& s) {
  return h_piecewise(p, s) > 0.0 ? 1 : 0;
}

int action_h_lin(const ModelParams& p, const State& s) {
  return h_linear(p, s) > 0.0 ? 1 : 0;
}

int ThresholdRule::action(int i) const {
  if (i == 0) return base > 0.0 ? 1 : 0;  // shared base case of H and H_Lin
  switch (kind) {
    case RuleKind::AlwaysNonCollab: return 0;
    case RuleKind::AlwaysCollab: return 1;
    case RuleKind::CollabBelow: return i < r ? 1 : 0;
    case RuleKind::CollabAbove: return i > r ? 1 : 0;
  }
  return 0;
}

ThresholdRule threshold_form(const ModelParams& p, int k, int l) {
  const auto hc = constants(p, k, l);

  ThresholdRule rule;
  rule.c_tilde = rule.b_tilde = rule.r2 = kNan;
  rule.r1 = -((p.h1 / p.mu1 - p.h2 / p.mu2) * p.cp) /
            ((1.0 / p.mu1 - 1.0 / p.mu2) * p.h0);

  if (l >= p.cg) {
    rule.base = *hc.b_l;
    if (*hc.c_l <= 0.0 && *hc.b_l <= 0.0) {
      rule.kind = RuleKind::AlwaysNonCollab;
      return rule;
    }
    rule.c_tilde = hc.w * hc.c_prime + (1.0 - hc.w) * *hc.c_l;
    rule.b_tilde = hc.w * (-*hc.y_l * hc.c_prime + hc.b_prime) + (1.0 - hc.w) * *hc.b_l;
    if (rule.c_tilde != 0.0)
      rule.r2 = -rule.b_tilde / rule.c_tilde;
    else
      rule.r2 = rule.b_tilde <= 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    rule.kind = rule.c_tilde <= 0.0 ? RuleKind::CollabBelow : RuleKind::CollabAbove;
    rule.r = rule.r2;
    return rule;
  }

  rule.base = hc.b;
  if (p.mu1 > p.mu2) {
    rule.kind = RuleKind::CollabBelow;
    rule.r = rule.r1;
  } else {
    rule.kind = RuleKind::AlwaysCollab;
  }
  return rule;
}

namespace {

// Initial collaborative-station cohort: the first cg finish together after one
// service time; the queue behind them drains at the pooled rate cg*mu2.
double initial_station2_done(const ModelParams& p, int position, DetMode mode) {
  if (mode == DetMode::NoInitialBlock || position <= p.cg) return 1.0 / p.mu2;
  return position / (p.cg * p.mu2);
}

// Sum of all triage completion times for one system: NPs pick waiting patients
// first-come-first-served by availability; every later collaborative service
// runs a plain 1/mu2 (the mode preconditions rule out renewed blocking).
double completion_time_sum(const ModelParams& p, int waiting, int in_triage,
                           int at_station1, int at_station2, DetMode mode) {
  double sum = 0.0;
  std::priority_queue<double, std::vector<double>, std::greater<>> avail;
  for (int m = 0; m < in_triage; ++m) {
    sum += 1.0 / p.mu0;  // already serving an upstream patient
    avail.push(1.0 / p.mu0 + 1.0 / p.mu2);
  }
  for (int m = 0; m < at_station1; ++m) avail.push(1.0 / p.mu1);
  for (int q = 1; q <= at_station2; ++q)
    avail.push(initial_station2_done(p, q, mode));

  while (waiting-- > 0) {
    const double done = avail.top() + 1.0 / p.mu0;
    avail.pop();
    sum += done;
    avail.push(done + 1.0 / p.mu2);
  }
  return sum;
}

void require_mode(const ModelParams& p, const State& s, DetMode mode) {
  require_decision(p, s);
  if (mode == DetMode::NoInitialBlock) {
    if (p.mu1 < p.mu2)
      throw std::invalid_argument("blocking-free trace requires mu1 >= mu2");
  } else {
    if (s.l < p.cg)
      throw std::invalid_argument("initial-block trace requires l >= cg");
    if (!(1.0 / p.mu0 > std::max(1.0 / p.mu1, p.cp / (p.cg * p.mu2))))
      throw std::invalid_argument(
          "initial-block trace requires 1/mu0 > max(1/mu1, cp/(cg*mu2))");
  }
}

}  // namespace

double deterministic_area_oracle(const ModelParams& p, const State& s,
                                 DetMode mode) {
  require_mode(p, s, mode);
  const double sum_solo =
      completion_time_sum(p, s.i, s.j - 1, s.k + 1, s.l, mode);
  const double sum_collab =
      completion_time_sum(p, s.i, s.j - 1, s.k, s.l + 1, mode);
  return p.h0 * (sum_solo - sum_collab);
}

double h0_closed_form(const ModelParams& p, const State& s, DetMode mode) {
  require_mode(p, s, mode);
  if (mode == DetMode::NoInitialBlock)
    return iceil(s.i - s.k, p.cp) * (1.0 / p.mu1 - 1.0 / p.mu2) * p.h0;

  const double pool = p.cg * p.mu2;
  if (1.0 / p.mu1 <= 1.0 / p.mu2) {
    double sum = 0.0;
    for (int r = p.cg; r <= s.l; ++r) sum += iceil(s.i - s.k - r, p.cp) / pool;
    return (iceil(s.i - s.k, p.cp) * (1.0 / p.mu1 - 1.0 / p.mu2) - sum) * p.h0;
  }
  if (1.0 / p.mu1 <= (s.l + 1.0) / pool) {
    const int lp = largest_below_ratio(p);
    double sum = 0.0;
    for (int r = lp + 1; r <= s.l; ++r) sum += iceil(s.i - s.k - r, p.cp) / pool;
    return (iceil(s.i - s.k - lp, p.cp) * (1.0 / p.mu1 - (lp + 1.0) / pool) - sum) *
           p.h0;
  }
  return iceil(s.i - s.l, p.cp) * (1.0 / p.mu1 - (s.l + 1.0) / pool) * p.h0;
}

}  // namespace clearq
