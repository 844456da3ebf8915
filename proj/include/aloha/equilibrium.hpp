#pragma once

#include <cstddef>
#include <vector>

#include "aloha/types.hpp"

namespace aloha {

/// Scalar first-order condition for a symmetric equilibrium q * 1 under
/// identical players with normalized parameters c and a.
struct SymmetricCondition {
  UtilityVariant variant;
  int n = 2;       ///< player count, >= 2
  double a = 0.0;  ///< normalized altruism weight, >= 0
  double c = 0.5;  ///< normalized utility weight, > 0

  void validate() const;
};

/// Value of the condition function at q in [0, 1]:
///   PowerLog           f(q)  = a q^2 (1-q)^(2N-3) + q - c
///   ThroughputLog      f~(q) = a q^2 (1-q)^(2N-3) + q (1-q)^(N-1) - c
///   PowerProportional  f^(q) = c (1-q)^(N-1) - a q (1-q)^(2N-3) - 1
/// Static altruism replaces the exponent 2N-3 by N-2 in the altruism term.
double symmetric_condition_eval(const SymmetricCondition& cond, double q);

/// Identical-player game (M = 1) realizing the condition's parameters.
GameSpec condition_game(const SymmetricCondition& cond, double rate = 1.0);

enum class NepKind { Symmetric, Heterogeneous };

/// An equilibrium point with diagnostics. Throughputs and normalized
/// utilities are recomputed from q_star, never copied from solver iterates.
struct NepResult {
  StrategyProfile q_star;
  double residual = 0.0;  ///< max_i |dV_i/dq_i| at q_star
  NepKind kind = NepKind::Symmetric;
  std::vector<double> throughputs;           ///< gamma_i(q_star)
  std::vector<double> normalized_utilities;  ///< V_i(q_star) / M_i
  StabilityClass stability = StabilityClass::Inconclusive;
};

NepResult make_nep_result(const GameSpec& spec, StrategyProfile q, NepKind kind);

/// All sign-change-bracketed roots of the condition on (eps, 1-eps), each
/// refined by bisection and expanded to the symmetric profile q * 1, sorted
/// ascending. Throws NoRootError when no sign change is found.
std::vector<NepResult> find_symmetric_neps(const SymmetricCondition& cond,
                                           int scan_points = 10000);

/// Root values only (no game evaluation); same scan and refinement.
std::vector<double> find_symmetric_roots(const SymmetricCondition& cond,
                                         int scan_points = 10000);

struct ExistenceReport {
  bool guaranteed_existence = false;
  bool parity_even_expected = false;
  double condition_max = 0.0;  ///< numerically located max over [0, 1]
  double argmax_q = 0.0;
  double condition_min = 0.0;
  double argmin_q = 0.0;
  double endpoint_low = 0.0;   ///< condition value at q = 0
  double endpoint_high = 0.0;  ///< condition value at q = 1
};

/// Existence / parity report for symmetric equilibria:
///  - PowerLog guarantees an interior root when c < 1,
///  - ThroughputLog requires max f~ >= 0 (an even root count is expected
///    when the max is strictly positive),
///  - PowerProportional guarantees a root when c > 1.
ExistenceReport symmetric_existence_report(const SymmetricCondition& cond,
                                           int scan_points = 10000);

/// Single-player best response to the others' strategies.
/// Log variants have the closed forms
///   PowerLog:      C / (M + A alpha S)
///   ThroughputLog: C / (M alpha + A alpha S)   (alpha = 0 is a DomainError)
/// clamped to [eps, 1-eps]; static altruism drops the alpha factor from the
/// A-term. The proportional variant is linear in q_i and returns the boundary
/// maximizer (0 or 1), or q_i itself when exactly indifferent.
double best_response(const GameSpec& spec, const StrategyProfile& q, std::size_t i);

struct HeterogeneousSolveOptions {
  double damping = 0.5;        ///< in (0, 1]
  int max_iters = 10000;
  double step_tol = 1e-10;     ///< infinity-norm of the damped update
  double residual_tol = 1e-8;  ///< max |gradient| accepted at the fixed point
};

/// Damped simultaneous best-response iteration
///   q <- (1 - damping) q + damping BR(q)
/// from q0. Throws NotConvergedError when the iteration fails to settle, the
/// gradient residual stays above tolerance, or a player's own second-order
/// condition d2V_i/dq_i^2 < 0 fails at the fixed point.
NepResult solve_heterogeneous_nep(const GameSpec& spec, StrategyProfile q0,
                                  const HeterogeneousSolveOptions& opts = {});

/// Default start point: q0_i = clamp(C_i / M_i).
StrategyProfile default_start(const GameSpec& spec);

/// Multi-start search from a coarse per-dimension grid; distinct results are
/// deduplicated at L-infinity distance 1e-6 and sorted lexicographically.
/// Starts that fail to converge are skipped.
std::vector<NepResult> solve_heterogeneous_multistart(
    const GameSpec& spec, const std::vector<double>& per_dim_values = {0.15, 0.5, 0.85},
    const HeterogeneousSolveOptions& opts = {});

}  // namespace aloha
