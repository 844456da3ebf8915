#pragma once

#include <cstddef>

#include "aloha/types.hpp"

namespace aloha {

/// Success probability of player i in a slot:
///   gamma_i(q) = q_i * prod_{j != i} (1 - q_j).
double throughput(const StrategyProfile& q, std::size_t i);

/// Dynamic altruism factor of player i:
///   alpha_i(q_{-i}) = prod_{j != i} (1 - q_j),
/// which equals throughput(q, i) + idle_time(q) identically.
double altruism_factor(const StrategyProfile& q, std::size_t i);

/// Mean idle probability of the channel: prod_j (1 - q_j).
double idle_time(const StrategyProfile& q);

/// Mean throughput of the other players:
///   (1 / (N-1)) * sum_{j != i} gamma_j(q).
double mean_others_throughput(const StrategyProfile& q, std::size_t i);

/// Rate at which the mean throughput of the others decays in q_i:
///   S_i = (1 / (N-1)) * sum_{j != i} q_j * prod_{k != i,j} (1 - q_k),
/// so that mean_others_throughput = (1 - q_i) * S_i.
double mean_others_sensitivity(const StrategyProfile& q, std::size_t i);

/// Net utility of player i under the game's variant.
/// PowerLog:           C log(gamma) + A alpha gbar - M q_i
/// ThroughputLog:      C log(gamma) + A alpha gbar - M gamma
/// PowerProportional:  C gamma      + A alpha gbar - M q_i
/// Static altruism replaces alpha by 1 in the altruism term only.
/// Throws DomainError when a log variant is evaluated at gamma <= 0.
double net_utility(const GameSpec& spec, const StrategyProfile& q, std::size_t i);

/// Analytic partial derivative of net_utility with respect to q_i.
/// Throws DomainError at q_i <= 0 for log variants.
double utility_gradient(const GameSpec& spec, const StrategyProfile& q, std::size_t i);

/// Analytic second partial d^2 V_i / (dq_i dq_l). The diagonal (l == i) is
/// -C_i / q_i^2 for log variants and 0 for the proportional variant.
/// Requires an interior profile; throws DomainError at the boundary.
double utility_hessian_cross(const GameSpec& spec, const StrategyProfile& q,
                             std::size_t i, std::size_t l);

}  // namespace aloha
