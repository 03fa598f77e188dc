#pragma once

#include <optional>

#include "clearq/model.hpp"

namespace clearq {

/// Closed-form constants behind the H approximations, for a decision column
/// (k, l) with implied j = cp - k - l >= 1. Fields tied to a saturated
/// collaborative station are populated only when l >= cg.
struct HeuristicConstants {
  int j_implied = 0;
  double b = 0.0;        ///< h1/mu1 - h2/mu2
  double c = 0.0;        ///< h0/cp * (1/mu1 - 1/mu2)
  double c_prime = 0.0;  ///< -h0/(cg*mu2)
  double b_prime = 0.0;  ///< (h1-h2)/mu1 - cp*h2/(cg*mu2)
  double w = 0.0;        ///< j*mu0 / (j*mu0 + k*mu1 + cg*mu2), independent of i
  std::optional<double> b_l;   ///< h1/mu1 - (l+1)/cg * h2/mu2
  std::optional<double> c_l;   ///< h0/cp * (1/mu1 - (l+1)/(cg*mu2))
  std::optional<double> y_l;   ///< cp - l - 1 + cg*mu2/mu1
  std::optional<int> ell_prime;  ///< largest n with n/(cg*mu2) < 1/mu1; needs c > 0
};

/// Throws "no deciding NP" when k + l >= cp.
HeuristicConstants constants(const ModelParams& params, int k, int l);

/// Piecewise-linear sign proxy for the value difference D at a decision state.
/// Ceiling terms are evaluated exactly as written, with no clamping; -1 is a
/// sentinel for the degenerate never-collaborate case.
double h_piecewise(const ModelParams& params, const State& s);

/// Linear variant: the ceiling-based upstream component is replaced by
/// i*c (or i*c_l), so for l >= cg outside the degenerate case and i >= 1 the
/// value equals i*c_tilde + b_tilde exactly.
double h_linear(const ModelParams& params, const State& s);

/// Suggested action: collaborate iff the proxy is strictly positive.
int action_h(const ModelParams& params, const State& s);
int action_h_lin(const ModelParams& params, const State& s);

enum class RuleKind { AlwaysNonCollab, AlwaysCollab, CollabBelow, CollabAbove };

/// Explicit threshold restatement of the linear heuristic for a column (k, l).
/// action(i) matches action_h_lin at every i, including the shared i = 0 base
/// case, which the in-queue threshold form does not cover by itself.
struct ThresholdRule {
  RuleKind kind = RuleKind::AlwaysNonCollab;
  double r = 0.0;  ///< threshold for CollabBelow / CollabAbove

  // diagnostics; NaN where not applicable
  double c_tilde = 0.0, b_tilde = 0.0;
  double r1 = 0.0, r2 = 0.0;
  double base = 0.0;  ///< value of the linear form at i = 0 (b or b_l)

  int action(int i) const;
};

ThresholdRule threshold_form(const ModelParams& params, int k, int l);

/// Deterministic two-system trace settings.
///   NoInitialBlock: blocking-free collaborative station (as if cg >= cp);
///                   requires mu1 >= mu2.
///   InitialBlock:   only the patients already queued collaboratively block;
///                   requires l >= cg and a triage stage slow enough that the
///                   initial backlog clears first (1/mu0 > max(1/mu1, cp/(cg*mu2))).
enum class DetMode { NoInitialBlock, InitialBlock };

/// Simulates both systems (differing only in the initial action) under the
/// deterministic model and always-collaborative control, and returns h0 times
/// the upstream head-count area difference. Independent check of the closed
/// forms below.
double deterministic_area_oracle(const ModelParams& params, const State& s,
                                 DetMode mode);

/// Upstream cost-difference closed forms the oracle validates (including h0).
double h0_closed_form(const ModelParams& params, const State& s, DetMode mode);

}  // namespace clearq
