#include "aloha/stability.hpp"

#include <cmath>

#include "aloha/game_model.hpp"

namespace aloha {

linalg::Matrix rosen_matrix(const GameSpec& spec, const StrategyProfile& q,
                            RosenDiagonal convention) {
  spec.validate();
  const std::size_t n = q.size();
  linalg::Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double diag = utility_hessian_cross(spec, q, i, i);
    h(i, i) = convention == RosenDiagonal::ProofConvention ? diag : 2.0 * diag;
    for (std::size_t l = i + 1; l < n; ++l) {
      const double sum =
          utility_hessian_cross(spec, q, i, l) + utility_hessian_cross(spec, q, l, i);
      h(i, l) = sum;
      h(l, i) = sum;
    }
  }
  return h;
}

bool gershgorin_check(const GameSpec& spec) {
  spec.validate();
  if (!spec.uniform_utility_weights())
    throw HeterogeneousPlayersError(
        "closed-form stability bound requires uniform C and A across players");
  const double c = spec.players.front().C;
  const double a = spec.players.front().A;
  const double n = static_cast<double>(spec.player_count());
  return c > 2.0 * (n - 1.0) * a;
}

bool is_negative_definite(const linalg::Matrix& h) {
  if (!h.square()) throw NonSymmetricMatrixError("matrix must be square");
  if (h.symmetry_defect() > 1e-10)
    throw NonSymmetricMatrixError("matrix is not symmetric within tolerance");
  for (double ev : linalg::symmetric_eigenvalues(h)) {
    if (!(ev < 0.0)) return false;
  }
  return true;
}

linalg::Matrix dynamics_jacobian(const GameSpec& spec, const StrategyProfile& q) {
  spec.validate();
  const std::size_t n = q.size();
  linalg::Matrix j(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rate = spec.players[i].r;
    for (std::size_t l = 0; l < n; ++l) {
      j(i, l) = rate * utility_hessian_cross(spec, q, i, l);
    }
  }
  return j;
}

StabilityClass classify_max_real(double max_real_part) {
  constexpr double kBand = 1e-9;
  if (max_real_part < -kBand) return StabilityClass::Stable;
  if (max_real_part > kBand) return StabilityClass::Unstable;
  return StabilityClass::Inconclusive;
}

StabilityClass classify_profile(const GameSpec& spec, const StrategyProfile& q) {
  return classify_max_real(linalg::max_real_eigenvalue(dynamics_jacobian(spec, q)));
}

StabilityReport stability_report(const GameSpec& spec, const StrategyProfile& q,
                                 RosenDiagonal convention) {
  StabilityReport report;
  report.rosen_negative_definite = is_negative_definite(rosen_matrix(spec, q, convention));
  report.gershgorin_bound_holds =
      spec.uniform_utility_weights() ? gershgorin_check(spec) : false;
  report.jacobian_eigen_max_real = linalg::max_real_eigenvalue(dynamics_jacobian(spec, q));
  report.classification = classify_max_real(report.jacobian_eigen_max_real);
  return report;
}

}  // namespace aloha
