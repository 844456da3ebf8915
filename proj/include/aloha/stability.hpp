#pragma once

#include "aloha/linalg.hpp"
#include "aloha/types.hpp"

namespace aloha {

/// Convention for the diagonal of the symmetrized cross-Hessian H.
/// The definition H_ij = d2V_i/dq_i dq_j + d2V_j/dq_j dq_i doubles the
/// diagonal second derivative; the stability argument's inequalities use the
/// single-sided diagonal H_ii = d2V_i/dq_i^2 instead. Both give the same
/// definiteness conclusions here; the single-sided form is the default.
enum class RosenDiagonal { ProofConvention, DefinitionConvention };

/// Symmetrized cross-Hessian H(q). Off-diagonal entries are
/// H_il = d2V_i/dq_i dq_l + d2V_l/dq_l dq_i; the diagonal follows the chosen
/// convention. Exactly symmetric by construction.
linalg::Matrix rosen_matrix(const GameSpec& spec, const StrategyProfile& q,
                            RosenDiagonal convention = RosenDiagonal::ProofConvention);

/// Closed-form sufficient stability bound C > 2 (N-1) A for players with
/// uniform C and A. Throws HeterogeneousPlayersError otherwise.
bool gershgorin_check(const GameSpec& spec);

/// True iff all eigenvalues of the symmetric matrix are strictly negative.
/// Rejects input whose symmetry defect exceeds 1e-10.
bool is_negative_definite(const linalg::Matrix& h);

/// Jacobian of the rate-scaled better-response flow:
///   J_il = r_i * d2V_i / (dq_i dq_l).
linalg::Matrix dynamics_jacobian(const GameSpec& spec, const StrategyProfile& q);

/// Stable / Unstable by the sign of the largest real eigenvalue part of the
/// flow Jacobian, with an Inconclusive band of +-1e-9.
StabilityClass classify_profile(const GameSpec& spec, const StrategyProfile& q);
StabilityClass classify_max_real(double max_real_part);

struct StabilityReport {
  bool rosen_negative_definite = false;
  bool gershgorin_bound_holds = false;  ///< false when players are not uniform
  double jacobian_eigen_max_real = 0.0;
  StabilityClass classification = StabilityClass::Inconclusive;
};

StabilityReport stability_report(const GameSpec& spec, const StrategyProfile& q,
                                 RosenDiagonal convention = RosenDiagonal::ProofConvention);

}  // namespace aloha
